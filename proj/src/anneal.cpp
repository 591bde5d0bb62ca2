#include <algorithm>
#include <cmath>
#include <utility>

#include "pbtd/search.hpp"
#include "pbtd/verify.hpp"
#include "search_detail.hpp"

namespace pbtd {

namespace {

// share of swap moves vs cycle switches
constexpr int kSwapMovePercent = 85;

void check_factorization(Side side, const std::vector<std::vector<UnorderedPair>>& columns) {
    if (static_cast<int>(columns.size()) != side.columns())
        throw Error(Errc::config, "state needs " + std::to_string(side.columns()) + " columns");
    std::vector<char> pair_seen(static_cast<std::size_t>(side.pair_count()), 0);
    std::vector<int> element_count(static_cast<std::size_t>(side.elements()));
    for (int c = 0; c < side.columns(); ++c) {
        const auto& column = columns[static_cast<std::size_t>(c)];
        if (static_cast<int>(column.size()) != side.rows())
            throw Error(Errc::config,
                        "column " + std::to_string(c + 1) + " needs " +
                            std::to_string(side.rows()) + " cells");
        std::fill(element_count.begin(), element_count.end(), 0);
        for (UnorderedPair p : column) {
            if (p.low < 0 || p.low >= p.high || p.high >= side.elements())
                throw Error(Errc::config, "column " + std::to_string(c + 1) + " holds a bad pair");
            ++element_count[static_cast<std::size_t>(p.low)];
            ++element_count[static_cast<std::size_t>(p.high)];
            char& seen = pair_seen[static_cast<std::size_t>(pair_index(side, p))];
            if (seen)
                throw Error(Errc::config, "pair (" + std::to_string(p.low) + "," +
                                              std::to_string(p.high) + ") appears twice");
            seen = 1;
        }
        for (int count : element_count)
            if (count != 1)
                throw Error(Errc::config,
                            "column " + std::to_string(c + 1) + " is not a perfect matching");
    }
    // every pair seen exactly once: cells == pair_count and no repeats
}

} // namespace

ColumnStructuredState::ColumnStructuredState(Side s, std::vector<std::vector<UnorderedPair>> cols)
    : side(s), columns(std::move(cols)) {
    check_factorization(side, columns);
    front_count.assign(static_cast<std::size_t>(side.rows()),
                       std::vector<int>(static_cast<std::size_t>(side.elements()), 0));
    back_count = front_count;
    front_distinct.assign(static_cast<std::size_t>(side.rows()), 0);
    back_distinct = front_distinct;
    total_cost = 2ll * side.rows() * side.elements();
    for (int c = 0; c < side.columns(); ++c)
        for (int r = 0; r < side.rows(); ++r)
            add_cell(c, r, columns[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)]);
}

ColumnStructuredState ColumnStructuredState::from_design(const DesignArray& design) {
    std::vector<std::vector<UnorderedPair>> cols(
        static_cast<std::size_t>(design.columns()),
        std::vector<UnorderedPair>(static_cast<std::size_t>(design.rows())));
    for (int c = 0; c < design.columns(); ++c)
        for (int r = 0; r < design.rows(); ++r)
            cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)] = design.at(r, c);
    return ColumnStructuredState(design.side(), std::move(cols));
}

void ColumnStructuredState::add_cell(int column, int row, UnorderedPair p) {
    const int mid = side.middle_column();
    if (column <= mid) {
        for (Element e : {p.low, p.high}) {
            if (front_count[static_cast<std::size_t>(row)][static_cast<std::size_t>(e)]++ == 0) {
                ++front_distinct[static_cast<std::size_t>(row)];
                --total_cost;
            }
        }
    }
    if (column >= mid) {
        for (Element e : {p.low, p.high}) {
            if (back_count[static_cast<std::size_t>(row)][static_cast<std::size_t>(e)]++ == 0) {
                ++back_distinct[static_cast<std::size_t>(row)];
                --total_cost;
            }
        }
    }
}

void ColumnStructuredState::remove_cell(int column, int row, UnorderedPair p) {
    const int mid = side.middle_column();
    if (column <= mid) {
        for (Element e : {p.low, p.high}) {
            if (--front_count[static_cast<std::size_t>(row)][static_cast<std::size_t>(e)] == 0) {
                --front_distinct[static_cast<std::size_t>(row)];
                ++total_cost;
            }
        }
    }
    if (column >= mid) {
        for (Element e : {p.low, p.high}) {
            if (--back_count[static_cast<std::size_t>(row)][static_cast<std::size_t>(e)] == 0) {
                --back_distinct[static_cast<std::size_t>(row)];
                ++total_cost;
            }
        }
    }
}

int ColumnStructuredState::placement_gain(int column, int row, UnorderedPair p) const {
    const int mid = side.middle_column();
    int gain = 0;
    if (column <= mid)
        for (Element e : {p.low, p.high})
            gain += front_count[static_cast<std::size_t>(row)][static_cast<std::size_t>(e)] == 0;
    if (column >= mid)
        for (Element e : {p.low, p.high})
            gain += back_count[static_cast<std::size_t>(row)][static_cast<std::size_t>(e)] == 0;
    return gain;
}

DesignArray ColumnStructuredState::realize() const {
    std::vector<UnorderedPair> cells(static_cast<std::size_t>(side.rows()) *
                                     static_cast<std::size_t>(side.columns()));
    for (int c = 0; c < side.columns(); ++c)
        for (int r = 0; r < side.rows(); ++r)
            cells[static_cast<std::size_t>(r) * side.columns() + c] =
                columns[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
    return DesignArray(side, std::move(cells));
}

ColumnStructuredState::AppliedMove ColumnStructuredState::apply_swap(int column, int row_a,
                                                                     int row_b) {
    auto& col = columns[static_cast<std::size_t>(column)];
    const UnorderedPair pa = col[static_cast<std::size_t>(row_a)];
    const UnorderedPair pb = col[static_cast<std::size_t>(row_b)];
    const long long before = total_cost;
    remove_cell(column, row_a, pa);
    remove_cell(column, row_b, pb);
    col[static_cast<std::size_t>(row_a)] = pb;
    col[static_cast<std::size_t>(row_b)] = pa;
    add_cell(column, row_a, pb);
    add_cell(column, row_b, pa);
    return AppliedMove{total_cost - before,
                       {CellChange{column, row_a, pa, pb}, CellChange{column, row_b, pb, pa}}};
}

namespace {

std::vector<int> partner_map(Side side, const std::vector<UnorderedPair>& matching) {
    std::vector<int> partner(static_cast<std::size_t>(side.elements()), -1);
    for (UnorderedPair p : matching) {
        partner[static_cast<std::size_t>(p.low)] = p.high;
        partner[static_cast<std::size_t>(p.high)] = p.low;
    }
    return partner;
}

// Cycles of the union of two disjoint perfect matchings, each listed as
// its vertex walk starting at the cycle's smallest element and stepping
// along matching A first. Ordered by smallest element.
std::vector<std::vector<Element>> union_cycles(Side side, const std::vector<int>& partner_a,
                                               const std::vector<int>& partner_b) {
    std::vector<char> visited(static_cast<std::size_t>(side.elements()), 0);
    std::vector<std::vector<Element>> cycles;
    for (Element start = 0; start < side.elements(); ++start) {
        if (visited[static_cast<std::size_t>(start)]) continue;
        std::vector<Element> walk;
        Element current = start;
        bool use_a = true;
        do {
            walk.push_back(current);
            visited[static_cast<std::size_t>(current)] = 1;
            current = use_a ? partner_a[static_cast<std::size_t>(current)]
                            : partner_b[static_cast<std::size_t>(current)];
            use_a = !use_a;
        } while (current != start);
        cycles.push_back(std::move(walk));
    }
    return cycles;
}

} // namespace

int ColumnStructuredState::cycle_count(int column_a, int column_b) const {
    const auto pa = partner_map(side, columns[static_cast<std::size_t>(column_a)]);
    const auto pb = partner_map(side, columns[static_cast<std::size_t>(column_b)]);
    return static_cast<int>(union_cycles(side, pa, pb).size());
}

ColumnStructuredState::AppliedMove ColumnStructuredState::apply_cycle_switch(int column_a,
                                                                             int column_b,
                                                                             int cycle_index) {
    const long long cost_before = total_cost;
    const auto pa = partner_map(side, columns[static_cast<std::size_t>(column_a)]);
    const auto pb = partner_map(side, columns[static_cast<std::size_t>(column_b)]);
    const auto cycles = union_cycles(side, pa, pb);
    const auto& walk = cycles[static_cast<std::size_t>(cycle_index) % cycles.size()];

    // walk alternates matching-A and matching-B edges; re-alternation moves
    // the A edges of the cycle to column B and vice versa
    std::vector<UnorderedPair> edges_a, edges_b;
    for (std::size_t i = 0; i < walk.size(); ++i) {
        const UnorderedPair edge = make_pair(walk[i], walk[(i + 1) % walk.size()]);
        (i % 2 == 0 ? edges_a : edges_b).push_back(edge);
    }

    AppliedMove move;
    auto rewire = [&](int column, const std::vector<UnorderedPair>& leaving,
                      std::vector<UnorderedPair> arriving) {
        auto& col = columns[static_cast<std::size_t>(column)];
        std::vector<int> vacated;
        for (int r = 0; r < side.rows(); ++r) {
            const UnorderedPair held = col[static_cast<std::size_t>(r)];
            if (std::find(leaving.begin(), leaving.end(), held) == leaving.end()) continue;
            vacated.push_back(r);
            remove_cell(column, r, held);
            move.changes.push_back(CellChange{column, r, held, held});
        }
        std::sort(arriving.begin(), arriving.end());
        const std::size_t change_base = move.changes.size() - vacated.size();
        std::vector<char> taken(vacated.size(), 0);
        for (UnorderedPair p : arriving) {
            int best_slot = -1;
            int best_gain = -1;
            for (std::size_t i = 0; i < vacated.size(); ++i) {
                if (taken[i]) continue;
                const int gain = placement_gain(column, vacated[i], p);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_slot = static_cast<int>(i);
                }
            }
            taken[static_cast<std::size_t>(best_slot)] = 1;
            const int row = vacated[static_cast<std::size_t>(best_slot)];
            col[static_cast<std::size_t>(row)] = p;
            add_cell(column, row, p);
            move.changes[change_base + static_cast<std::size_t>(best_slot)].after = p;
        }
    };
    rewire(column_a, edges_a, edges_b);
    rewire(column_b, edges_b, edges_a);

    move.delta = total_cost - cost_before;
    return move;
}

void ColumnStructuredState::revert(const AppliedMove& move) {
    for (auto it = move.changes.rbegin(); it != move.changes.rend(); ++it) {
        remove_cell(it->column, it->row, it->after);
        columns[static_cast<std::size_t>(it->column)][static_cast<std::size_t>(it->row)] =
            it->before;
        add_cell(it->column, it->row, it->before);
    }
}

ColumnStructuredState random_state(Side side, std::mt19937_64& rng) {
    std::vector<std::vector<UnorderedPair>> cols = round_robin_factorization(side);
    for (auto& column : cols) {
        for (std::size_t i = column.size(); i > 1; --i)
            std::swap(column[i - 1], column[detail::rand_below(rng, i)]);
    }
    return ColumnStructuredState(side, std::move(cols));
}

bool audit_state(const ColumnStructuredState& state) {
    const Side side = state.side;
    // factorization invariants must survive every move
    try {
        check_factorization(side, state.columns);
    } catch (const Error&) {
        return false;
    }
    // recount the window books from scratch
    ColumnStructuredState fresh(side, state.columns);
    return fresh.front_count == state.front_count && fresh.back_count == state.back_count &&
           fresh.front_distinct == state.front_distinct &&
           fresh.back_distinct == state.back_distinct && fresh.total_cost == state.total_cost;
}

namespace {

struct Annealer {
    Side side;
    const SearchConfig& config;
    detail::Budget budget;
    std::mt19937_64 rng;
    SearchStats stats;

    Annealer(Side s, const SearchConfig& cfg)
        : side(s), config(cfg), budget(cfg), rng(cfg.seed) {}

    SearchOutcome found(ColumnStructuredState& state) {
        DesignArray design = state.realize();
        if (!verify(design).valid)
            throw std::logic_error("anneal engine reached cost zero on an invalid design");
        SearchOutcome outcome;
        outcome.kind = OutcomeKind::found;
        outcome.design = std::move(design);
        outcome.best_cost = 0;
        stats.elapsed_seconds = budget.elapsed_seconds();
        outcome.stats = stats;
        return outcome;
    }

    SearchOutcome timed_out(long long best_cost, const std::optional<DesignArray>& best) {
        SearchOutcome outcome;
        outcome.kind = OutcomeKind::timed_out;
        outcome.best_cost = best_cost;
        outcome.design = best;
        stats.elapsed_seconds = budget.elapsed_seconds();
        outcome.stats = stats;
        return outcome;
    }

    SearchOutcome run(ColumnStructuredState state) {
        if (state.cost() == 0) return found(state);

        const int moves_per_epoch =
            config.anneal.moves_per_temperature.value_or(200 * side.n);
        double temperature = config.anneal.initial_temperature;
        long long best_cost = state.cost();
        std::optional<DesignArray> best_design = state.realize();
        int non_improving_epochs = 0;

        for (;;) {
            bool improved = false;
            for (int i = 0; i < moves_per_epoch; ++i) {
                if ((stats.moves & 0x3F) == 0 && budget.expired())
                    return timed_out(best_cost, best_design);
                ++stats.moves;

                long long delta;
                ColumnStructuredState::AppliedMove move;
                if (detail::rand_below(rng, 100) < kSwapMovePercent) {
                    const int column = static_cast<int>(detail::rand_below(
                        rng, static_cast<std::uint64_t>(side.columns())));
                    const int row_a = static_cast<int>(
                        detail::rand_below(rng, static_cast<std::uint64_t>(side.rows())));
                    int row_b = static_cast<int>(
                        detail::rand_below(rng, static_cast<std::uint64_t>(side.rows() - 1)));
                    if (row_b >= row_a) ++row_b;
                    move = state.apply_swap(column, row_a, row_b);
                } else {
                    const int column_a = static_cast<int>(detail::rand_below(
                        rng, static_cast<std::uint64_t>(side.columns())));
                    int column_b = static_cast<int>(detail::rand_below(
                        rng, static_cast<std::uint64_t>(side.columns() - 1)));
                    if (column_b >= column_a) ++column_b;
                    const int lo = std::min(column_a, column_b);
                    const int hi = std::max(column_a, column_b);
                    const int cycles = state.cycle_count(lo, hi);
                    const int pick = static_cast<int>(
                        detail::rand_below(rng, static_cast<std::uint64_t>(cycles)));
                    move = state.apply_cycle_switch(lo, hi, pick);
                }
                delta = move.delta;

                const bool accept =
                    delta <= 0 || detail::rand_unit(rng) < std::exp(-static_cast<double>(delta) /
                                                                    temperature);
                if (!accept) {
                    state.revert(move);
                    continue;
                }
                if (state.cost() < best_cost) {
                    best_cost = state.cost();
                    best_design = state.realize();
                    improved = true;
                }
                if (state.cost() == 0) return found(state);
            }

            temperature *= config.anneal.cooling_factor;
            if (config.progress) {
                SearchProgress p;
                p.moves = stats.moves;
                p.current_cost = state.cost();
                p.best_cost = best_cost;
                p.temperature = temperature;
                p.restarts = stats.restarts;
                p.elapsed_seconds = budget.elapsed_seconds();
                config.progress(p);
            }
            if (improved) {
                non_improving_epochs = 0;
            } else if (++non_improving_epochs >= std::max(1, config.anneal.restart_limit)) {
                if (budget.expired()) return timed_out(best_cost, best_design);
                state = random_state(side, rng);
                temperature = config.anneal.initial_temperature;
                non_improving_epochs = 0;
                ++stats.restarts;
                if (state.cost() < best_cost) {
                    best_cost = state.cost();
                    best_design = state.realize();
                }
                if (state.cost() == 0) return found(state);
            }
        }
    }
};

} // namespace

SearchOutcome anneal_search(Side side, const SearchConfig& config) {
    detail::validate_config(config, SearchEngine::anneal);
    Annealer annealer(side, config);
    return annealer.run(random_state(side, annealer.rng));
}

SearchOutcome anneal_search(Side side, const SearchConfig& config, const DesignArray& warm_start) {
    detail::validate_config(config, SearchEngine::anneal);
    if (warm_start.side() != side)
        throw Error(Errc::config, "warm start side does not match the requested side");
    Annealer annealer(side, config);
    return annealer.run(ColumnStructuredState::from_design(warm_start));
}

} // namespace pbtd
