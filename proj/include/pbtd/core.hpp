#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Core types for partitioned balanced tournament designs: an n x (2n-1)
// array over the element set {0, ..., 2n-1} whose cells are unordered
// pairs, plus the symmetry actions that preserve validity (relabeling,
// row permutation, horizontal reflection, window-column permutation).

namespace pbtd {

// Error discriminator carried by every pbtd::Error.
enum class Errc {
    equal_elements,       // pair with a == a
    out_of_range,         // element outside [0, 2n)
    bad_permutation,      // mapping is not a bijection of the right size
    middle_column_moved,  // window-column permutation touched column n
    out_of_window,        // window-column permutation touched a foreign column
    shape,                // grid dimensions inconsistent
    token,                // unparseable input token
    range,                // parsed label out of range
    self_pair,            // parsed cell pairs an element with itself
    schema,               // structured document missing/mistyped fields
    config,               // invalid search configuration
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

using Element = int;

// Side n of a design. Rows, columns, element count and cell count are all
// determined by n: an n x (2n-1) grid over 2n elements has n(2n-1) cells,
// which equals the number of unordered pairs of a 2n-set.
struct Side {
    int n = 1;

    explicit Side(int side_n) : n(side_n) {
        if (n < 1)
            throw Error(Errc::out_of_range, "side must be at least 1");
        if (n > 16384)
            throw Error(Errc::out_of_range, "side too large");
    }

    int rows() const { return n; }
    int columns() const { return 2 * n - 1; }
    int elements() const { return 2 * n; }
    int pair_count() const { return n * (2 * n - 1); }
    // 0-based index of the column shared by the front and back windows.
    int middle_column() const { return n - 1; }

    friend bool operator==(Side, Side) = default;
};

struct Dims {
    int rows;
    int columns;
    int elements;
    int pair_count;

    friend bool operator==(Dims, Dims) = default;
};

Dims dims(Side side);

// One game: two distinct elements in canonical (low, high) order.
struct UnorderedPair {
    Element low = 0;
    Element high = 1;

    bool contains(Element e) const { return e == low || e == high; }

    friend auto operator<=>(UnorderedPair, UnorderedPair) = default;
};

// Canonicalizes (a, b) to (min, max). Throws equal_elements on a == b and
// out_of_range on a negative label.
UnorderedPair make_pair(Element a, Element b);
// Same, additionally range-checking both labels against side.elements().
UnorderedPair make_pair(Side side, Element a, Element b);

// Dense index of a canonical pair in [0, side.pair_count()).
int pair_index(Side side, UnorderedPair p);
UnorderedPair pair_from_index(Side side, int index);

// The candidate design: a fully populated n x (2n-1) grid of pairs.
// Shape and label range are construction invariants; everything else
// (factor columns, pair coverage, window factors) is the verifier's job,
// so broken designs can be represented and reported on.
class DesignArray {
public:
    // cells in row-major order, rows() * columns() of them
    DesignArray(Side side, std::vector<UnorderedPair> cells);

    Side side() const { return side_; }
    int rows() const { return side_.rows(); }
    int columns() const { return side_.columns(); }

    // 0-based access
    const UnorderedPair& at(int row, int column) const {
        return cells_[static_cast<std::size_t>(row) * side_.columns() + column];
    }
    const std::vector<UnorderedPair>& cells() const { return cells_; }

    // Copy with one cell replaced; the pair is range-checked.
    DesignArray with_cell(int row, int column, UnorderedPair p) const;

    friend bool operator==(const DesignArray&, const DesignArray&) = default;

private:
    Side side_;
    std::vector<UnorderedPair> cells_;
};

// Bijection on {0, ..., size-1}, used to relabel elements.
class ElementPermutation {
public:
    explicit ElementPermutation(std::vector<int> mapping);
    static ElementPermutation identity(int size);

    int size() const { return static_cast<int>(mapping_.size()); }
    int operator()(int i) const { return mapping_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& mapping() const { return mapping_; }
    ElementPermutation inverse() const;

private:
    std::vector<int> mapping_;
};

// Validity-preserving symmetries. Each returns a new design.

DesignArray relabel(const DesignArray& design, const ElementPermutation& perm);

// row_perm is 0-based: new row r holds old row row_perm[r].
DesignArray permute_rows(const DesignArray& design, const std::vector<int>& row_perm);

// Column j (1-based) moves to column 2n - j; the middle column is fixed.
// An involution that swaps the roles of the front and back windows.
DesignArray reflect_horizontal(const DesignArray& design);

enum class Window { front, back };

// Permutes columns strictly inside one window. column_perm is 0-based over
// all columns: new column c holds old column column_perm[c]. It must fix
// the middle column (shared by both windows) and every column of the other
// window.
DesignArray permute_window_columns(const DesignArray& design, Window window,
                                   const std::vector<int>& column_perm);

} // namespace pbtd
