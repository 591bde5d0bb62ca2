// Acceptance suite. Each criterion prints one [PASS]/[FAIL] line; the
// binary exits nonzero if any criterion fails. Tolerances and budgets are
// pinned here, in code.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pbtd/io.hpp"
#include "pbtd/search.hpp"
#include "pbtd/verify.hpp"
#include "test_support.hpp"

using namespace pbtd;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> run;
};

bool golden_verification(std::string& detail) {
    const auto start = Clock::now();
    const VerificationReport report = verify(table1());
    const double elapsed_ms = seconds_since(start) * 1000.0;

    std::set<UnorderedPair> distinct(table1().cells().begin(), table1().cells().end());
    const bool ok = report.valid && report.violations.empty() &&
                    check_pair_coverage(table1()).empty() && distinct.size() == 153 &&
                    check_column_factors(table1()).empty() &&
                    check_front_factors(table1()).empty() &&
                    check_back_factors(table1()).empty() && elapsed_ms < 50.0;
    std::ostringstream out;
    out << "valid=" << report.valid << " violations=" << report.violations.size()
        << " distinct_pairs=" << distinct.size() << " verify_ms=" << elapsed_ms;
    detail = out.str();
    return ok;
}

bool mutation_completeness(std::string& detail) {
    const DesignArray& golden = table1();
    int swaps = 0;
    int swap_accepts = 0;
    for (int column = 0; column < 17; ++column)
        for (int row_a = 0; row_a < 9; ++row_a)
            for (int row_b = row_a + 1; row_b < 9; ++row_b) {
                ++swaps;
                if (verify(testsupport::swapped_cells(golden, row_a, row_b, column)).valid)
                    ++swap_accepts;
            }

    auto rng = testsupport::make_rng(2024);
    int overwrites = 0;
    int overwrite_accepts = 0;
    while (overwrites < 1000) {
        const int row = static_cast<int>(rng() % 9);
        const int column = static_cast<int>(rng() % 17);
        const UnorderedPair replacement =
            pair_from_index(golden.side(), static_cast<int>(rng() % 153));
        if (replacement == golden.at(row, column)) continue;
        ++overwrites;
        if (verify(golden.with_cell(row, column, replacement)).valid) ++overwrite_accepts;
    }

    std::ostringstream out;
    out << "swaps=" << swaps << " swap_false_accepts=" << swap_accepts
        << " overwrites=" << overwrites << " overwrite_false_accepts=" << overwrite_accepts;
    detail = out.str();
    return swaps == 612 && swap_accepts == 0 && overwrites == 1000 && overwrite_accepts == 0;
}

DesignArray random_symmetry_image(const DesignArray& start, std::mt19937_64& rng) {
    DesignArray design = start;
    const int steps = 1 + static_cast<int>(rng() % 4);
    for (int s = 0; s < steps; ++s) {
        switch (rng() % 4) {
        case 0:
            design =
                relabel(design, ElementPermutation(testsupport::random_permutation(18, rng)));
            break;
        case 1:
            design = permute_rows(design, testsupport::random_permutation(9, rng));
            break;
        case 2:
            design = reflect_horizontal(design);
            break;
        default: {
            const bool front = rng() % 2 == 0;
            const std::vector<int> window = testsupport::random_permutation(8, rng);
            std::vector<int> perm(17);
            for (int i = 0; i < 17; ++i) perm[static_cast<std::size_t>(i)] = i;
            for (int i = 0; i < 8; ++i)
                perm[static_cast<std::size_t>(front ? i : 9 + i)] =
                    front ? window[static_cast<std::size_t>(i)]
                          : 9 + window[static_cast<std::size_t>(i)];
            design = permute_window_columns(design, front ? Window::front : Window::back, perm);
            break;
        }
        }
    }
    return design;
}

bool symmetry_suite(std::string& detail) {
    const DesignArray& golden = table1();
    const DesignArray broken = testsupport::swapped_cells(golden, 2, 6, 4);

    auto rng = testsupport::make_rng(777);
    int good_failures = 0;
    int bad_accepts = 0;
    for (int trial = 0; trial < 200; ++trial) {
        if (!verify(random_symmetry_image(golden, rng)).valid) ++good_failures;
        if (verify(random_symmetry_image(broken, rng)).valid) ++bad_accepts;
    }
    std::ostringstream out;
    out << "compositions=200 valid_image_failures=" << good_failures
        << " invalid_image_accepts=" << bad_accepts;
    detail = out.str();
    return good_failures == 0 && bad_accepts == 0;
}

bool nonexistence_side_2(std::string& detail) {
    SearchConfig config;
    config.engine = SearchEngine::backtrack;
    config.time_budget_seconds.reset();

    const auto start = Clock::now();
    const SearchOutcome outcome = backtrack_search(Side(2), config);
    const CountResult count = count_solutions(Side(2), config);
    const double elapsed = seconds_since(start);

    // independent oracle: verify every arrangement of the 6 pairs
    std::vector<int> order{0, 1, 2, 3, 4, 5};
    std::uint64_t naive_valid = 0;
    std::uint64_t naive_total = 0;
    do {
        std::vector<UnorderedPair> cells;
        for (int index : order) cells.push_back(pair_from_index(Side(2), index));
        ++naive_total;
        if (verify(DesignArray(Side(2), std::move(cells))).valid) ++naive_valid;
    } while (std::next_permutation(order.begin(), order.end()));

    std::ostringstream out;
    out << "outcome="
        << (outcome.kind == OutcomeKind::exhausted_no_solution ? "exhausted" : "other")
        << " count=" << count.count << " complete=" << count.complete
        << " naive_arrangements=" << naive_total << " naive_valid=" << naive_valid
        << " elapsed_s=" << elapsed;
    detail = out.str();
    return outcome.kind == OutcomeKind::exhausted_no_solution && count.count == 0 &&
           count.complete && naive_total == 720 && naive_valid == 0 &&
           count.count == naive_valid && elapsed < 1.0;
}

bool nonexistence_side_3(std::string& detail) {
    SearchConfig config;
    config.engine = SearchEngine::backtrack;
    config.symmetry_break = true;
    config.time_budget_seconds.reset();

    const auto start = Clock::now();
    const SearchOutcome outcome = backtrack_search(Side(3), config);
    const double elapsed = seconds_since(start);

    std::ostringstream out;
    out << "outcome="
        << (outcome.kind == OutcomeKind::exhausted_no_solution ? "exhausted" : "other")
        << " nodes=" << outcome.stats.nodes << " elapsed_s=" << elapsed;
    detail = out.str();
    return outcome.kind == OutcomeKind::exhausted_no_solution && elapsed < 120.0;
}

bool constructive_side_5(std::string& detail) {
    const auto start = Clock::now();
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        SearchConfig config;
        config.engine = SearchEngine::anneal;
        config.seed = seed;
        config.time_budget_seconds = 90.0; // 10 seeds x 90 s stays inside 15 min
        const SearchOutcome outcome = anneal_search(Side(5), config);
        if (outcome.kind != OutcomeKind::found) continue;
        const double elapsed = seconds_since(start);
        const bool valid = verify(*outcome.design).valid;
        std::ostringstream out;
        out << "seed=" << seed << " moves=" << outcome.stats.moves
            << " restarts=" << outcome.stats.restarts << " valid=" << valid
            << " elapsed_s=" << elapsed;
        detail = out.str();
        return valid && elapsed < 900.0;
    }
    detail = "no seed in 0..9 produced a design";
    return false;
}

bool cost_oracle_equivalence(std::string& detail) {
    auto rng = testsupport::make_rng(4242);
    int states = 0;
    int mismatches = 0;
    for (int n : {2, 3, 5}) {
        const Side side(n);
        const int trials = n == 5 ? 168 : 166;
        for (int trial = 0; trial < trials; ++trial) {
            ColumnStructuredState state(side, testsupport::random_one_factorization(side, rng));
            ++states;
            const bool zero_cost = state.cost() == 0;
            const bool valid = verify(state.realize()).valid;
            if (zero_cost != valid) ++mismatches;
            if (state.cost() != testsupport::recount_cost(state.realize())) ++mismatches;
        }
    }

    // incremental deltas against full recomputation, 10^4 random moves
    const Side side(5);
    ColumnStructuredState state = random_state(side, rng);
    long long cost = testsupport::recount_cost(state.realize());
    int delta_errors = 0;
    const int moves = 10000;
    for (int step = 0; step < moves; ++step) {
        ColumnStructuredState::AppliedMove move;
        if (rng() % 10 < 7) {
            const int column = static_cast<int>(rng() % side.columns());
            const int row_a = static_cast<int>(rng() % side.rows());
            int row_b = static_cast<int>(rng() % (side.rows() - 1));
            if (row_b >= row_a) ++row_b;
            move = state.apply_swap(column, row_a, row_b);
        } else {
            const int column_a = static_cast<int>(rng() % side.columns());
            int column_b = static_cast<int>(rng() % (side.columns() - 1));
            if (column_b >= column_a) ++column_b;
            const int lo = std::min(column_a, column_b);
            const int hi = std::max(column_a, column_b);
            move = state.apply_cycle_switch(lo, hi,
                                            static_cast<int>(rng() % state.cycle_count(lo, hi)));
        }
        const long long recounted = testsupport::recount_cost(state.realize());
        if (move.delta != recounted - cost || state.cost() != recounted || !audit_state(state))
            ++delta_errors;
        cost = recounted;
    }

    std::ostringstream out;
    out << "states=" << states << " equivalence_mismatches=" << mismatches << " moves=" << moves
        << " delta_errors=" << delta_errors;
    detail = out.str();
    return states == 500 && mismatches == 0 && delta_errors == 0;
}

bool round_trips(std::string& detail) {
    auto rng = testsupport::make_rng(99);
    int designs = 0;
    int failures = 0;
    for (int n : {1, 2, 3, 5, 9}) {
        const Side side(n);
        for (int trial = 0; trial < 100; ++trial) {
            const DesignArray design = testsupport::random_design(side, rng);
            ++designs;
            const std::string text = emit_text(design);
            const std::string structured = emit_structured(design);
            if (parse_text(text) != design) ++failures;
            if (parse_structured(structured) != design) ++failures;
            if (emit_text(parse_text(text)) != text) ++failures;
            if (emit_structured(parse_structured(structured)) != structured) ++failures;
        }
    }
    std::ostringstream out;
    out << "designs=" << designs << " failures=" << failures;
    detail = out.str();
    return designs == 500 && failures == 0;
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"golden-verification", golden_verification},
        {"mutation-completeness", mutation_completeness},
        {"symmetry-suite", symmetry_suite},
        {"nonexistence-n2", nonexistence_side_2},
        {"nonexistence-n3", nonexistence_side_3},
        {"constructive-n5", constructive_side_5},
        {"cost-oracle-equivalence", cost_oracle_equivalence},
        {"round-trips", round_trips},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        std::string detail;
        bool ok = false;
        const auto start = Clock::now();
        try {
            ok = criterion.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double elapsed = seconds_since(start);
        std::printf("[%s] %s (%.2fs) %s\n", ok ? "PASS" : "FAIL", criterion.name.c_str(), elapsed,
                    detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures > 0) std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
