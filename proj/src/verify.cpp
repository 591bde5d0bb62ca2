#include "pbtd/verify.hpp"

#include <algorithm>

namespace pbtd {

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::column_not_factor: return "ColumnNotFactor";
    case ViolationKind::pair_missing: return "PairMissing";
    case ViolationKind::pair_repeated: return "PairRepeated";
    case ViolationKind::row_multiplicity_exceeded: return "RowMultiplicityExceeded";
    case ViolationKind::front_window_not_factor: return "FrontWindowNotFactor";
    case ViolationKind::back_window_not_factor: return "BackWindowNotFactor";
    }
    return "?";
}

std::vector<Violation> check_column_factors(const DesignArray& design) {
    const Side side = design.side();
    std::vector<Violation> out;
    std::vector<int> count(static_cast<std::size_t>(side.elements()));
    for (int c = 0; c < side.columns(); ++c) {
        std::fill(count.begin(), count.end(), 0);
        for (int r = 0; r < side.rows(); ++r) {
            const UnorderedPair p = design.at(r, c);
            ++count[static_cast<std::size_t>(p.low)];
            ++count[static_cast<std::size_t>(p.high)];
        }
        for (Element e = 0; e < side.elements(); ++e) {
            if (count[static_cast<std::size_t>(e)] != 1) {
                Violation v;
                v.kind = ViolationKind::column_not_factor;
                v.column = c + 1;
                v.element = e;
                v.count = count[static_cast<std::size_t>(e)];
                out.push_back(std::move(v));
            }
        }
    }
    return out;
}

std::vector<Violation> check_pair_coverage(const DesignArray& design) {
    const Side side = design.side();
    std::vector<std::vector<CellRef>> where(static_cast<std::size_t>(side.pair_count()));
    for (int r = 0; r < side.rows(); ++r)
        for (int c = 0; c < side.columns(); ++c)
            where[static_cast<std::size_t>(pair_index(side, design.at(r, c)))].push_back(
                CellRef{r + 1, c + 1});
    std::vector<Violation> out;
    for (int i = 0; i < side.pair_count(); ++i) {
        const auto& cells = where[static_cast<std::size_t>(i)];
        if (cells.size() == 1) continue;
        Violation v;
        v.kind = cells.empty() ? ViolationKind::pair_missing : ViolationKind::pair_repeated;
        v.pair = pair_from_index(side, i);
        v.count = static_cast<int>(cells.size());
        v.cells = cells;
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<Violation> check_row_multiplicity(const DesignArray& design) {
    const Side side = design.side();
    std::vector<Violation> out;
    std::vector<int> count(static_cast<std::size_t>(side.elements()));
    for (int r = 0; r < side.rows(); ++r) {
        std::fill(count.begin(), count.end(), 0);
        for (int c = 0; c < side.columns(); ++c) {
            const UnorderedPair p = design.at(r, c);
            ++count[static_cast<std::size_t>(p.low)];
            ++count[static_cast<std::size_t>(p.high)];
        }
        for (Element e = 0; e < side.elements(); ++e) {
            if (count[static_cast<std::size_t>(e)] > 2) {
                Violation v;
                v.kind = ViolationKind::row_multiplicity_exceeded;
                v.row = r + 1;
                v.element = e;
                v.count = count[static_cast<std::size_t>(e)];
                out.push_back(std::move(v));
            }
        }
    }
    return out;
}

namespace {

std::vector<Violation> check_window_factors(const DesignArray& design, Window window) {
    const Side side = design.side();
    // 0-based column range of the window; both include the middle column
    const int first = window == Window::front ? 0 : side.middle_column();
    const int last = window == Window::front ? side.middle_column() : side.columns() - 1;
    const ViolationKind kind = window == Window::front ? ViolationKind::front_window_not_factor
                                                       : ViolationKind::back_window_not_factor;
    std::vector<Violation> out;
    std::vector<int> count(static_cast<std::size_t>(side.elements()));
    for (int r = 0; r < side.rows(); ++r) {
        std::fill(count.begin(), count.end(), 0);
        for (int c = first; c <= last; ++c) {
            const UnorderedPair p = design.at(r, c);
            ++count[static_cast<std::size_t>(p.low)];
            ++count[static_cast<std::size_t>(p.high)];
        }
        for (Element e = 0; e < side.elements(); ++e) {
            if (count[static_cast<std::size_t>(e)] != 1) {
                Violation v;
                v.kind = kind;
                v.row = r + 1;
                v.element = e;
                v.count = count[static_cast<std::size_t>(e)];
                out.push_back(std::move(v));
            }
        }
    }
    return out;
}

bool violation_before(const Violation& a, const Violation& b) {
    auto key = [](const Violation& v) {
        const UnorderedPair p = v.pair.value_or(UnorderedPair{0, 1});
        return std::tuple(static_cast<int>(v.kind), v.row, v.column, v.element, p.low, p.high);
    };
    return key(a) < key(b);
}

} // namespace

std::vector<Violation> check_front_factors(const DesignArray& design) {
    return check_window_factors(design, Window::front);
}

std::vector<Violation> check_back_factors(const DesignArray& design) {
    return check_window_factors(design, Window::back);
}

VerificationReport verify(const DesignArray& design) {
    VerificationReport report;
    for (auto* check : {&check_column_factors, &check_pair_coverage, &check_row_multiplicity,
                        &check_front_factors, &check_back_factors}) {
        std::vector<Violation> found = (*check)(design);
        report.violations.insert(report.violations.end(),
                                 std::make_move_iterator(found.begin()),
                                 std::make_move_iterator(found.end()));
    }
    std::stable_sort(report.violations.begin(), report.violations.end(), violation_before);
    for (const Violation& v : report.violations)
        ++report.counts_by_kind[static_cast<std::size_t>(v.kind)];
    report.valid = report.violations.empty();
    return report;
}

} // namespace pbtd
