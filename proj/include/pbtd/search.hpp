#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>

#include "pbtd/core.hpp"

// Search engines for PBTDs. Two engines with different guarantees:
//
//   backtrack  complete depth-first search over cells in column-major
//              order, pruning with exactly the definition's clauses; an
//              exhausted tree is a nonexistence proof.
//   anneal     simulated annealing over column-structured states (the
//              columns always form a one-factorization, so only the
//              window-factor defects are scored); scales constructively
//              but proves nothing on failure.
//
// Both engines are deterministic for a fixed config (seed included) when
// run single-threaded, and both verify a candidate with the full verifier
// before reporting it found.

namespace pbtd {

enum class SearchEngine { backtrack, anneal };

struct AnnealParams {
    double initial_temperature = 2.0;
    double cooling_factor = 0.97;
    // moves per temperature epoch; defaults to 200 * n when unset
    std::optional<int> moves_per_temperature;
    // fresh restart after this many consecutive non-improving epochs
    int restart_limit = 50;
};

struct SearchProgress {
    std::uint64_t nodes = 0;       // backtrack placements
    std::uint64_t moves = 0;       // anneal attempted moves
    long long current_cost = -1;   // anneal only
    long long best_cost = -1;      // anneal only
    double temperature = 0.0;      // anneal only
    std::uint64_t restarts = 0;
    double elapsed_seconds = 0.0;
};

struct SearchConfig {
    SearchEngine engine = SearchEngine::backtrack;
    std::uint64_t seed = 0;
    // wall-clock budget; nullopt runs unbounded
    std::optional<double> time_budget_seconds = 60.0;
    // pre-fix the middle column to row i = (2i, 2i+1); sound because any
    // solution maps to that form under relabeling plus row permutation
    bool symmetry_break = false;
    AnnealParams anneal;
    // counting stops after this many solutions; nullopt counts all
    std::optional<std::uint64_t> solution_limit;
    // cooperative cancellation, checked alongside the time budget
    const std::atomic<bool>* stop = nullptr;
    // invoked periodically from the search loop when set
    std::function<void(const SearchProgress&)> progress;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t moves = 0;
    std::uint64_t restarts = 0;
    double elapsed_seconds = 0.0;
};

enum class OutcomeKind { found, exhausted_no_solution, timed_out };

struct SearchOutcome {
    OutcomeKind kind = OutcomeKind::timed_out;
    // found: the verified design; timed_out: the best state seen, if any
    std::optional<DesignArray> design;
    // timed_out: remaining defect (anneal) or unfilled cells at the
    // deepest point reached (backtrack); 0 for found
    long long best_cost = -1;
    SearchStats stats;
};

struct CountResult {
    std::uint64_t count = 0;
    bool complete = false;
    SearchStats stats;
};

// Circle-method one-factorization of the pairs of a 2n-set: matching k
// pairs element (k + rotation) mod (2n-1) with the fixed element 2n-1 and
// (k-i) with (k+i) mod (2n-1) for i = 1..n-1. The 2n-1 matchings are
// pairwise disjoint and jointly cover every pair.
std::vector<std::vector<UnorderedPair>> round_robin_factorization(Side side, int rotation = 0);

// Partial assignment for the backtracking engine. The bookkeeping mirrors
// the definition's clauses: globally used pairs, per-column element sets,
// per-row element sets for each window. place/remove keep it incremental;
// audit_state recounts from the grid and must always agree.
struct PartialDesign {
    Side side;
    std::vector<std::optional<UnorderedPair>> grid; // row-major
    std::vector<char> pair_used;                    // by pair_index
    std::vector<std::uint64_t> column_elements;     // per column
    std::vector<std::uint64_t> front_elements;      // per row
    std::vector<std::uint64_t> back_elements;       // per row
    int filled_count = 0;

    explicit PartialDesign(Side s);

    bool filled(int row, int column) const {
        return grid[static_cast<std::size_t>(row) * side.columns() + column].has_value();
    }
    bool can_place(int row, int column, UnorderedPair p) const;
    void place(int row, int column, UnorderedPair p);
    void remove(int row, int column);
    bool complete() const { return filled_count == side.rows() * side.columns(); }
    DesignArray realize() const; // requires complete()
};

// Local-search state: the columns always carry a one-factorization, so
// column factors and pair coverage hold by construction and the cost
// counts only window defects, per row 2n minus the number of distinct
// elements in each window. Cost zero is equivalent to a valid PBTD.
struct ColumnStructuredState {
    struct CellChange {
        int column;
        int row;
        UnorderedPair before;
        UnorderedPair after;
    };
    struct AppliedMove {
        long long delta = 0;
        std::vector<CellChange> changes;
    };

    Side side;
    std::vector<std::vector<UnorderedPair>> columns; // columns[c][r]
    // multiplicity of each element in each row's window cells
    std::vector<std::vector<int>> front_count; // [row][element]
    std::vector<std::vector<int>> back_count;
    std::vector<int> front_distinct;
    std::vector<int> back_distinct;
    long long total_cost = 0;

    // columns[c][r] = pair at row r of column c; throws Errc::config if
    // the columns do not form a one-factorization
    ColumnStructuredState(Side s, std::vector<std::vector<UnorderedPair>> cols);
    static ColumnStructuredState from_design(const DesignArray& design);

    long long cost() const { return total_cost; }
    DesignArray realize() const;

    // Swap the rows of two cells in one column. Self-inverse.
    AppliedMove apply_swap(int column, int row_a, int row_b);
    // Number of cycles in the union of two columns' matchings.
    int cycle_count(int column_a, int column_b) const;
    // Re-alternate one cycle of the union (cycles ordered by smallest
    // element), then greedily reassign the pairs that changed columns to
    // the vacated rows, least added cost first, ties to the lowest row.
    AppliedMove apply_cycle_switch(int column_a, int column_b, int cycle_index);
    void revert(const AppliedMove& move);

private:
    void add_cell(int column, int row, UnorderedPair p);
    void remove_cell(int column, int row, UnorderedPair p);
    // distinct-count gain of placing p at (row, column), counting both windows
    int placement_gain(int column, int row, UnorderedPair p) const;
};

// Round-robin columns with rows shuffled by rng; the annealer's initial
// and restart state.
ColumnStructuredState random_state(Side side, std::mt19937_64& rng);

// True iff the incremental bookkeeping equals a from-scratch recount
// (and, for column states, the factorization invariants still hold).
bool audit_state(const PartialDesign& state);
bool audit_state(const ColumnStructuredState& state);

// Complete search; ExhaustedNoSolution is a nonexistence proof.
SearchOutcome backtrack_search(Side side, const SearchConfig& config);

// Number of solutions up to limit (overrides config.solution_limit when
// given). With symmetry_break the count is per normalized middle column:
// existence is unaffected, raw counts are not orbit counts.
CountResult count_solutions(Side side, const SearchConfig& config,
                            std::optional<std::uint64_t> limit = std::nullopt);

SearchOutcome anneal_search(Side side, const SearchConfig& config);
// Warm-started variant; the design's columns must form a one-factorization.
SearchOutcome anneal_search(Side side, const SearchConfig& config, const DesignArray& warm_start);

// Dispatch on config.engine.
SearchOutcome run_search(Side side, const SearchConfig& config);

// Independent seeded searches (seed, seed+1, ...) racing on threads; the
// first verified find wins. Nondeterministic by contract, verifier-sound.
SearchOutcome portfolio_search(Side side, const SearchConfig& config, int workers);

} // namespace pbtd
