#include "pbtd/search.hpp"

#include <algorithm>
#include <mutex>
#include <thread>
#include <utility>

#include "pbtd/verify.hpp"
#include "search_detail.hpp"

namespace pbtd {

namespace detail {

void validate_config(const SearchConfig& config, SearchEngine expected) {
    if (config.engine != expected)
        throw Error(Errc::config, expected == SearchEngine::backtrack
                                      ? "this operation needs the backtrack engine"
                                      : "this operation needs the anneal engine");
    if (config.time_budget_seconds && *config.time_budget_seconds <= 0.0)
        throw Error(Errc::config, "time budget must be positive");
    if (config.solution_limit && *config.solution_limit == 0)
        throw Error(Errc::config, "solution limit must be positive");
    if (expected == SearchEngine::anneal) {
        const AnnealParams& a = config.anneal;
        if (a.initial_temperature <= 0.0)
            throw Error(Errc::config, "initial temperature must be positive");
        if (a.cooling_factor <= 0.0 || a.cooling_factor >= 1.0)
            throw Error(Errc::config, "cooling factor must lie strictly between 0 and 1");
        if (a.moves_per_temperature && *a.moves_per_temperature <= 0)
            throw Error(Errc::config, "moves per temperature must be positive");
        if (a.restart_limit < 0)
            throw Error(Errc::config, "restart limit must be non-negative");
    }
}

} // namespace detail

std::vector<std::vector<UnorderedPair>> round_robin_factorization(Side side, int rotation) {
    const int m = side.columns(); // 2n - 1, the rotating elements
    const int fixed = side.elements() - 1;
    std::vector<std::vector<UnorderedPair>> factors(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        const int base = ((k + rotation) % m + m) % m;
        std::vector<UnorderedPair>& matching = factors[static_cast<std::size_t>(k)];
        matching.reserve(static_cast<std::size_t>(side.rows()));
        matching.push_back(make_pair(base, fixed));
        for (int i = 1; i < side.rows(); ++i) {
            const int a = ((base - i) % m + m) % m;
            const int b = (base + i) % m;
            matching.push_back(make_pair(a, b));
        }
        std::sort(matching.begin(), matching.end());
    }
    return factors;
}

PartialDesign::PartialDesign(Side s)
    : side(s),
      grid(static_cast<std::size_t>(s.rows()) * static_cast<std::size_t>(s.columns())),
      pair_used(static_cast<std::size_t>(s.pair_count()), 0),
      column_elements(static_cast<std::size_t>(s.columns()), 0),
      front_elements(static_cast<std::size_t>(s.rows()), 0),
      back_elements(static_cast<std::size_t>(s.rows()), 0) {
    if (side.elements() > 64)
        throw Error(Errc::config, "side too large for the backtracking engine (n <= 32)");
}

bool PartialDesign::can_place(int row, int column, UnorderedPair p) const {
    if (filled(row, column)) return false;
    if (pair_used[static_cast<std::size_t>(pair_index(side, p))]) return false;
    const std::uint64_t mask = (1ull << p.low) | (1ull << p.high);
    if (column_elements[static_cast<std::size_t>(column)] & mask) return false;
    const int mid = side.middle_column();
    if (column <= mid && (front_elements[static_cast<std::size_t>(row)] & mask)) return false;
    if (column >= mid && (back_elements[static_cast<std::size_t>(row)] & mask)) return false;
    return true;
}

void PartialDesign::place(int row, int column, UnorderedPair p) {
    if (!can_place(row, column, p)) throw std::logic_error("illegal placement");
    grid[static_cast<std::size_t>(row) * side.columns() + column] = p;
    pair_used[static_cast<std::size_t>(pair_index(side, p))] = 1;
    const std::uint64_t mask = (1ull << p.low) | (1ull << p.high);
    const int mid = side.middle_column();
    column_elements[static_cast<std::size_t>(column)] |= mask;
    if (column <= mid) front_elements[static_cast<std::size_t>(row)] |= mask;
    if (column >= mid) back_elements[static_cast<std::size_t>(row)] |= mask;
    ++filled_count;
}

void PartialDesign::remove(int row, int column) {
    auto& slot = grid[static_cast<std::size_t>(row) * side.columns() + column];
    if (!slot) throw std::logic_error("removing an empty cell");
    const UnorderedPair p = *slot;
    slot.reset();
    pair_used[static_cast<std::size_t>(pair_index(side, p))] = 0;
    const std::uint64_t mask = (1ull << p.low) | (1ull << p.high);
    const int mid = side.middle_column();
    column_elements[static_cast<std::size_t>(column)] &= ~mask;
    if (column <= mid) front_elements[static_cast<std::size_t>(row)] &= ~mask;
    if (column >= mid) back_elements[static_cast<std::size_t>(row)] &= ~mask;
    --filled_count;
}

DesignArray PartialDesign::realize() const {
    if (!complete()) throw std::logic_error("realizing an incomplete partial design");
    std::vector<UnorderedPair> cells;
    cells.reserve(grid.size());
    for (const auto& slot : grid) cells.push_back(*slot);
    return DesignArray(side, std::move(cells));
}

bool audit_state(const PartialDesign& state) {
    PartialDesign fresh(state.side);
    int filled = 0;
    const int mid = state.side.middle_column();
    for (int r = 0; r < state.side.rows(); ++r) {
        for (int c = 0; c < state.side.columns(); ++c) {
            const auto& slot = state.grid[static_cast<std::size_t>(r) * state.side.columns() + c];
            if (!slot) continue;
            ++filled;
            const UnorderedPair p = *slot;
            fresh.pair_used[static_cast<std::size_t>(pair_index(state.side, p))] = 1;
            const std::uint64_t mask = (1ull << p.low) | (1ull << p.high);
            fresh.column_elements[static_cast<std::size_t>(c)] |= mask;
            if (c <= mid) fresh.front_elements[static_cast<std::size_t>(r)] |= mask;
            if (c >= mid) fresh.back_elements[static_cast<std::size_t>(r)] |= mask;
        }
    }
    return filled == state.filled_count && fresh.pair_used == state.pair_used &&
           fresh.column_elements == state.column_elements &&
           fresh.front_elements == state.front_elements &&
           fresh.back_elements == state.back_elements;
}

namespace {

struct BacktrackDriver {
    Side side;
    const SearchConfig& config;
    detail::Budget budget;
    PartialDesign state;
    std::vector<std::pair<int, int>> order; // (row, column), column-major
    bool counting = false;
    std::uint64_t limit = 0; // 0 = unlimited
    SearchStats stats;
    std::uint64_t solutions = 0;
    std::optional<DesignArray> found;
    bool timed_out = false;
    bool limit_stopped = false;
    std::size_t max_depth = 0;
    std::uint64_t next_progress = 1 << 22;

    BacktrackDriver(Side s, const SearchConfig& cfg) : side(s), config(cfg), budget(cfg), state(s) {
        if (config.symmetry_break) {
            // middle column normalized to row i = (2i, 2i+1); any solution
            // maps to this form by relabeling plus row permutation
            for (int r = 0; r < side.rows(); ++r)
                state.place(r, side.middle_column(), UnorderedPair{2 * r, 2 * r + 1});
        }
        for (int c = 0; c < side.columns(); ++c)
            for (int r = 0; r < side.rows(); ++r)
                if (!state.filled(r, c)) order.emplace_back(r, c);
    }

    bool at_limit() const { return counting && limit != 0 && solutions >= limit; }

    // returns true to stop the whole search
    bool dfs(std::size_t depth) {
        max_depth = std::max(max_depth, depth);
        if (depth == order.size()) {
            DesignArray design = state.realize();
            if (!verify(design).valid)
                throw std::logic_error("backtrack engine produced an invalid design");
            ++solutions;
            if (!counting) {
                found = std::move(design);
                return true;
            }
            return false;
        }
        const auto [row, column] = order[depth];
        const int mid = side.middle_column();
        const std::uint64_t forbid =
            state.column_elements[static_cast<std::size_t>(column)] |
            (column <= mid ? state.front_elements[static_cast<std::size_t>(row)] : 0) |
            (column >= mid ? state.back_elements[static_cast<std::size_t>(row)] : 0);
        const int m = side.elements();
        for (Element a = 0; a < m - 1; ++a) {
            if (at_limit()) {
                limit_stopped = true;
                return true;
            }
            if (forbid >> a & 1) continue;
            for (Element b = a + 1; b < m; ++b) {
                if (at_limit()) {
                    limit_stopped = true;
                    return true;
                }
                if (forbid >> b & 1) continue;
                const UnorderedPair p{a, b};
                if (state.pair_used[static_cast<std::size_t>(pair_index(side, p))]) continue;
                ++stats.nodes;
                if ((stats.nodes & 0xFFF) == 0) {
                    if (budget.expired()) {
                        timed_out = true;
                        return true;
                    }
                    if (config.progress && stats.nodes >= next_progress) {
                        next_progress += 1 << 22;
                        SearchProgress p2;
                        p2.nodes = stats.nodes;
                        p2.elapsed_seconds = budget.elapsed_seconds();
                        config.progress(p2);
                    }
                }
                state.place(row, column, p);
                const bool stop = dfs(depth + 1);
                state.remove(row, column);
                if (stop) return true;
            }
        }
        return false;
    }

    void run() {
        if (budget.expired())
            timed_out = true;
        else
            dfs(0);
        stats.elapsed_seconds = budget.elapsed_seconds();
    }
};

} // namespace

SearchOutcome backtrack_search(Side side, const SearchConfig& config) {
    detail::validate_config(config, SearchEngine::backtrack);
    BacktrackDriver driver(side, config);
    driver.run();
    SearchOutcome outcome;
    outcome.stats = driver.stats;
    if (driver.found) {
        outcome.kind = OutcomeKind::found;
        outcome.design = std::move(driver.found);
        outcome.best_cost = 0;
    } else if (driver.timed_out) {
        outcome.kind = OutcomeKind::timed_out;
        outcome.best_cost = static_cast<long long>(driver.order.size() - driver.max_depth);
    } else {
        outcome.kind = OutcomeKind::exhausted_no_solution;
        outcome.best_cost = -1;
    }
    return outcome;
}

CountResult count_solutions(Side side, const SearchConfig& config,
                            std::optional<std::uint64_t> limit) {
    detail::validate_config(config, SearchEngine::backtrack);
    BacktrackDriver driver(side, config);
    driver.counting = true;
    driver.limit = limit ? *limit : config.solution_limit.value_or(0);
    driver.run();
    CountResult result;
    result.count = driver.solutions;
    result.complete = !driver.timed_out && !driver.limit_stopped;
    result.stats = driver.stats;
    return result;
}

SearchOutcome run_search(Side side, const SearchConfig& config) {
    return config.engine == SearchEngine::backtrack ? backtrack_search(side, config)
                                                    : anneal_search(side, config);
}

SearchOutcome portfolio_search(Side side, const SearchConfig& config, int workers) {
    if (workers < 1) throw Error(Errc::config, "portfolio needs at least one worker");
    detail::validate_config(config, config.engine);

    std::atomic<bool> shared_stop{false};
    std::atomic<int> done{0};
    std::mutex mutex;
    std::vector<SearchOutcome> outcomes;
    std::optional<SearchOutcome> winner;
    std::vector<std::exception_ptr> errors;
    const auto wall_start = std::chrono::steady_clock::now();

    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            SearchConfig local = config;
            local.seed = config.seed + static_cast<std::uint64_t>(w);
            local.stop = &shared_stop;
            local.progress = nullptr;
            try {
                SearchOutcome out = run_search(side, local);
                std::lock_guard lock(mutex);
                if (out.kind == OutcomeKind::found && !winner) {
                    winner = out;
                    shared_stop.store(true, std::memory_order_relaxed);
                }
                outcomes.push_back(std::move(out));
            } catch (...) {
                std::lock_guard lock(mutex);
                errors.push_back(std::current_exception());
            }
            done.fetch_add(1, std::memory_order_relaxed);
        });
    }
    while (done.load(std::memory_order_relaxed) < workers) {
        if (config.stop && config.stop->load(std::memory_order_relaxed))
            shared_stop.store(true, std::memory_order_relaxed);
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
    for (std::thread& t : threads) t.join();
    if (!errors.empty()) std::rethrow_exception(errors.front());

    SearchOutcome combined;
    for (const SearchOutcome& out : outcomes) {
        combined.stats.nodes += out.stats.nodes;
        combined.stats.moves += out.stats.moves;
        combined.stats.restarts += out.stats.restarts;
    }
    combined.stats.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
    if (winner) {
        combined.kind = OutcomeKind::found;
        combined.design = winner->design;
        combined.best_cost = 0;
        return combined;
    }
    combined.kind = OutcomeKind::timed_out;
    combined.best_cost = -1;
    for (const SearchOutcome& out : outcomes) {
        if (out.kind == OutcomeKind::exhausted_no_solution) {
            combined.kind = OutcomeKind::exhausted_no_solution;
            combined.design.reset();
            combined.best_cost = -1;
            break;
        }
        if (out.best_cost >= 0 && (combined.best_cost < 0 || out.best_cost < combined.best_cost)) {
            combined.best_cost = out.best_cost;
            combined.design = out.design;
        }
    }
    return combined;
}

} // namespace pbtd
