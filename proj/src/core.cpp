#include "pbtd/core.hpp"

#include <algorithm>
#include <utility>

namespace pbtd {

Dims dims(Side side) {
    return Dims{side.rows(), side.columns(), side.elements(), side.pair_count()};
}

UnorderedPair make_pair(Element a, Element b) {
    if (a == b)
        throw Error(Errc::equal_elements,
                    "pair elements must be distinct, got " + std::to_string(a) + " twice");
    if (a < 0 || b < 0)
        throw Error(Errc::out_of_range, "element labels must be non-negative");
    return a < b ? UnorderedPair{a, b} : UnorderedPair{b, a};
}

UnorderedPair make_pair(Side side, Element a, Element b) {
    UnorderedPair p = make_pair(a, b);
    if (p.high >= side.elements())
        throw Error(Errc::out_of_range,
                    "element " + std::to_string(p.high) + " out of range for side " +
                        std::to_string(side.n) + " (labels 0.." +
                        std::to_string(side.elements() - 1) + ")");
    return p;
}

int pair_index(Side side, UnorderedPair p) {
    // triangular index over pairs of a 2n-set, lexicographic in (low, high)
    const int m = side.elements();
    return p.low * m - p.low * (p.low + 1) / 2 + (p.high - p.low - 1);
}

UnorderedPair pair_from_index(Side side, int index) {
    const int m = side.elements();
    int low = 0;
    int remaining = index;
    while (remaining >= m - 1 - low) {
        remaining -= m - 1 - low;
        ++low;
    }
    return UnorderedPair{low, low + 1 + remaining};
}

DesignArray::DesignArray(Side side, std::vector<UnorderedPair> cells)
    : side_(side), cells_(std::move(cells)) {
    const std::size_t expected =
        static_cast<std::size_t>(side_.rows()) * static_cast<std::size_t>(side_.columns());
    if (cells_.size() != expected)
        throw Error(Errc::shape, "design needs " + std::to_string(expected) + " cells, got " +
                                     std::to_string(cells_.size()));
    for (const UnorderedPair& p : cells_) {
        if (p.low < 0 || p.high >= side_.elements())
            throw Error(Errc::out_of_range,
                        "cell (" + std::to_string(p.low) + "," + std::to_string(p.high) +
                            ") out of range for side " + std::to_string(side_.n));
        if (p.low >= p.high)
            throw Error(Errc::self_pair, "cell pair not canonical");
    }
}

DesignArray DesignArray::with_cell(int row, int column, UnorderedPair p) const {
    make_pair(side_, p.low, p.high);
    std::vector<UnorderedPair> cells = cells_;
    cells[static_cast<std::size_t>(row) * side_.columns() + column] = p;
    return DesignArray(side_, std::move(cells));
}

ElementPermutation::ElementPermutation(std::vector<int> mapping) : mapping_(std::move(mapping)) {
    std::vector<char> hit(mapping_.size(), 0);
    for (int target : mapping_) {
        if (target < 0 || target >= size() || hit[static_cast<std::size_t>(target)])
            throw Error(Errc::bad_permutation, "mapping is not a bijection");
        hit[static_cast<std::size_t>(target)] = 1;
    }
}

ElementPermutation ElementPermutation::identity(int size) {
    std::vector<int> mapping(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) mapping[static_cast<std::size_t>(i)] = i;
    return ElementPermutation(std::move(mapping));
}

ElementPermutation ElementPermutation::inverse() const {
    std::vector<int> inv(mapping_.size());
    for (int i = 0; i < size(); ++i) inv[static_cast<std::size_t>(mapping_[i])] = i;
    return ElementPermutation(std::move(inv));
}

DesignArray relabel(const DesignArray& design, const ElementPermutation& perm) {
    if (perm.size() != design.side().elements())
        throw Error(Errc::bad_permutation,
                    "permutation size " + std::to_string(perm.size()) + " does not match " +
                        std::to_string(design.side().elements()) + " elements");
    std::vector<UnorderedPair> cells;
    cells.reserve(design.cells().size());
    for (UnorderedPair p : design.cells())
        cells.push_back(make_pair(perm(p.low), perm(p.high)));
    return DesignArray(design.side(), std::move(cells));
}

namespace {

void require_bijection(const std::vector<int>& perm, int size, const char* what) {
    if (static_cast<int>(perm.size()) != size)
        throw Error(Errc::bad_permutation, std::string(what) + ": wrong size");
    std::vector<char> hit(perm.size(), 0);
    for (int target : perm) {
        if (target < 0 || target >= size || hit[static_cast<std::size_t>(target)])
            throw Error(Errc::bad_permutation, std::string(what) + ": not a bijection");
        hit[static_cast<std::size_t>(target)] = 1;
    }
}

} // namespace

DesignArray permute_rows(const DesignArray& design, const std::vector<int>& row_perm) {
    require_bijection(row_perm, design.rows(), "row permutation");
    std::vector<UnorderedPair> cells;
    cells.reserve(design.cells().size());
    for (int r = 0; r < design.rows(); ++r)
        for (int c = 0; c < design.columns(); ++c)
            cells.push_back(design.at(row_perm[static_cast<std::size_t>(r)], c));
    return DesignArray(design.side(), std::move(cells));
}

DesignArray reflect_horizontal(const DesignArray& design) {
    const int cols = design.columns();
    std::vector<UnorderedPair> cells;
    cells.reserve(design.cells().size());
    for (int r = 0; r < design.rows(); ++r)
        for (int c = 0; c < cols; ++c)
            cells.push_back(design.at(r, cols - 1 - c));
    return DesignArray(design.side(), std::move(cells));
}

DesignArray permute_window_columns(const DesignArray& design, Window window,
                                   const std::vector<int>& column_perm) {
    const Side side = design.side();
    require_bijection(column_perm, side.columns(), "column permutation");
    const int mid = side.middle_column();
    if (column_perm[static_cast<std::size_t>(mid)] != mid)
        throw Error(Errc::middle_column_moved,
                    "column " + std::to_string(mid + 1) + " belongs to both windows");
    for (int c = 0; c < side.columns(); ++c) {
        if (c == mid) continue;
        const bool in_window = window == Window::front ? c < mid : c > mid;
        if (!in_window && column_perm[static_cast<std::size_t>(c)] != c)
            throw Error(Errc::out_of_window,
                        "column " + std::to_string(c + 1) + " is outside the " +
                            (window == Window::front ? "front" : "back") + " window");
    }
    std::vector<UnorderedPair> cells;
    cells.reserve(design.cells().size());
    for (int r = 0; r < design.rows(); ++r)
        for (int c = 0; c < side.columns(); ++c)
            cells.push_back(design.at(r, column_perm[static_cast<std::size_t>(c)]));
    return DesignArray(design.side(), std::move(cells));
}

} // namespace pbtd
