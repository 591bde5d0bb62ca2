#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "pbtd/core.hpp"

// Decides whether a design is a PBTD. Five independent checks, one per
// defining clause: every column is a perfect matching of the element set,
// every unordered pair occupies exactly one cell, no element sits in three
// cells of a row, and every row's front window (columns 1..n) and back
// window (columns n..2n-1) each form a perfect matching. Checks report all
// violations rather than stopping at the first, so broken designs can be
// diagnosed and search code can use the reports.

namespace pbtd {

enum class ViolationKind {
    column_not_factor,
    pair_missing,
    pair_repeated,
    row_multiplicity_exceeded,
    front_window_not_factor,
    back_window_not_factor,
};

inline constexpr int violation_kind_count = 6;

std::string_view to_string(ViolationKind kind);

// 1-based grid position.
struct CellRef {
    int row = 0;
    int column = 0;

    friend auto operator<=>(CellRef, CellRef) = default;
};

// One defect, pinpointed. Rows and columns are 1-based; 0 means the field
// does not apply to this kind. Element violations carry element and count;
// pair violations carry the pair (and, when repeated, every cell holding it).
struct Violation {
    ViolationKind kind = ViolationKind::column_not_factor;
    int row = 0;
    int column = 0;
    Element element = -1;
    std::optional<UnorderedPair> pair;
    int count = 0;
    std::vector<CellRef> cells;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct VerificationReport {
    bool valid = false;
    std::vector<Violation> violations;
    std::array<int, violation_kind_count> counts_by_kind{};

    friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

// Clause 1: each element exactly once per column.
std::vector<Violation> check_column_factors(const DesignArray& design);
// Coverage: each of the n(2n-1) pairs in exactly one cell.
std::vector<Violation> check_pair_coverage(const DesignArray& design);
// Clause 2: each element in at most two cells of a row.
std::vector<Violation> check_row_multiplicity(const DesignArray& design);
// Clause 3: each row's columns 1..n hold each element exactly once.
std::vector<Violation> check_front_factors(const DesignArray& design);
// Clause 4: same over columns n..2n-1.
std::vector<Violation> check_back_factors(const DesignArray& design);

// All five checks, violations sorted by (kind, row, column, element, pair)
// so reports are deterministic.
VerificationReport verify(const DesignArray& design);

} // namespace pbtd
