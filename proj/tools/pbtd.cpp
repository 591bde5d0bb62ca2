// pbtd: batch tool for partitioned balanced tournament designs.
//
//   pbtd verify  [input]   check a design and report every violation
//   pbtd search  <n>       construct a design or prove none exists
//   pbtd table1            emit the embedded side-nine design
//   pbtd convert [input]   translate between the text and structured formats
//
// Designs and reports go to standard output, search progress to standard
// error. '-' (the default input) reads standard input. Exit codes: 0 the
// design is valid / a design was found, 1 invalid / not found / exhausted,
// 2 usage, parse, or config errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pbtd/io.hpp"
#include "pbtd/search.hpp"
#include "pbtd/verify.hpp"

namespace {

constexpr int kExitValid = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;

// PBTD_TIMEOUT_SECONDS overrides the 60 s default search budget.
constexpr double kDefaultTimeoutSeconds = 60.0;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) throw pbtd::Error(pbtd::Errc::token, "cannot open " + path);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

pbtd::DesignArray parse_design(const std::string& text, const std::string& format) {
    return format == "structured" ? pbtd::parse_structured(text) : pbtd::parse_text(text);
}

std::string emit_design(const pbtd::DesignArray& design, const std::string& format) {
    if (format == "structured") return pbtd::emit_structured(design) + "\n";
    return pbtd::emit_text(design);
}

std::string pair_text(pbtd::UnorderedPair p) {
    return "(" + std::to_string(p.low) + "," + std::to_string(p.high) + ")";
}

void print_report_text(const pbtd::VerificationReport& report, std::ostream& out) {
    out << "valid: " << (report.valid ? "true" : "false")
        << ", violations: " << report.violations.size() << "\n";
    for (const pbtd::Violation& v : report.violations) {
        out << "  " << pbtd::to_string(v.kind);
        if (v.row > 0) out << " row " << v.row;
        if (v.column > 0) out << " column " << v.column;
        if (v.element >= 0) out << " element " << v.element;
        if (v.pair) out << " pair " << pair_text(*v.pair);
        if (v.kind != pbtd::ViolationKind::pair_missing) out << " count " << v.count;
        if (!v.cells.empty() && v.kind == pbtd::ViolationKind::pair_repeated) {
            out << " cells";
            for (const pbtd::CellRef& cell : v.cells)
                out << " (" << cell.row << "," << cell.column << ")";
        }
        out << "\n";
    }
}

void print_report_machine(const pbtd::VerificationReport& report, std::ostream& out) {
    nlohmann::json doc;
    doc["valid"] = report.valid;
    nlohmann::json summary = nlohmann::json::object();
    for (int k = 0; k < pbtd::violation_kind_count; ++k) {
        if (report.counts_by_kind[static_cast<std::size_t>(k)] > 0)
            summary[std::string(pbtd::to_string(static_cast<pbtd::ViolationKind>(k)))] =
                report.counts_by_kind[static_cast<std::size_t>(k)];
    }
    doc["summary"] = std::move(summary);
    nlohmann::json violations = nlohmann::json::array();
    for (const pbtd::Violation& v : report.violations) {
        nlohmann::json record;
        record["kind"] = std::string(pbtd::to_string(v.kind));
        if (v.row > 0) record["row"] = v.row;
        if (v.column > 0) record["column"] = v.column;
        if (v.element >= 0) record["element"] = v.element;
        if (v.pair) record["pair"] = {v.pair->low, v.pair->high};
        record["count"] = v.count;
        if (!v.cells.empty() && v.kind == pbtd::ViolationKind::pair_repeated) {
            nlohmann::json cells = nlohmann::json::array();
            for (const pbtd::CellRef& cell : v.cells) cells.push_back({cell.row, cell.column});
            record["cells"] = std::move(cells);
        }
        violations.push_back(std::move(record));
    }
    doc["violations"] = std::move(violations);
    out << doc.dump() << "\n";
}

std::optional<double> default_time_budget() {
    if (const char* env = std::getenv("PBTD_TIMEOUT_SECONDS")) {
        char* end = nullptr;
        const double value = std::strtod(env, &end);
        if (end != env && value > 0.0) return value;
    }
    return kDefaultTimeoutSeconds;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"partitioned balanced tournament design toolkit"};
    app.require_subcommand(1);

    std::string input = "-";
    std::string format = "text";
    std::string report_style = "text";
    auto* verify_cmd = app.add_subcommand("verify", "verify a design and report violations");
    verify_cmd->add_option("input", input, "design file, or - for stdin");
    verify_cmd->add_option("--format", format, "input format")
        ->check(CLI::IsMember({"text", "structured"}));
    verify_cmd->add_option("--report", report_style, "report style")
        ->check(CLI::IsMember({"text", "machine"}));

    int side_n = 0;
    std::string engine_name = "backtrack";
    std::uint64_t seed = 0;
    double timeout = 0.0;
    bool unbounded = false;
    bool symmetry_break = false;
    bool count_mode = false;
    std::uint64_t limit = 0;
    std::string out_path;
    int portfolio = 0;
    auto* search_cmd = app.add_subcommand("search", "search for a design of side n");
    search_cmd->add_option("n", side_n, "side (rows) of the design")->required();
    search_cmd->add_option("--engine", engine_name, "search engine")
        ->check(CLI::IsMember({"backtrack", "anneal"}));
    search_cmd->add_option("--seed", seed, "random seed");
    auto* timeout_opt = search_cmd->add_option("--timeout", timeout, "time budget in seconds");
    search_cmd->add_flag("--unbounded", unbounded, "run without a time budget");
    search_cmd->add_flag("--symmetry-break", symmetry_break, "normalize the middle column");
    search_cmd->add_flag("--count", count_mode, "count solutions instead of emitting one");
    search_cmd->add_option("--limit", limit, "stop counting after this many solutions");
    search_cmd->add_option("--out", out_path, "write the found design to this file");
    search_cmd->add_option("--portfolio", portfolio, "race this many seeded searches");

    std::string table1_format = "text";
    auto* table1_cmd = app.add_subcommand("table1", "emit the embedded side-nine design");
    table1_cmd->add_option("--format", table1_format, "output format")
        ->check(CLI::IsMember({"text", "structured"}));

    std::string conv_input = "-";
    std::string conv_from = "text";
    std::string conv_to = "structured";
    auto* convert_cmd = app.add_subcommand("convert", "translate between formats");
    convert_cmd->add_option("input", conv_input, "design file, or - for stdin");
    convert_cmd->add_option("--from", conv_from, "input format")
        ->check(CLI::IsMember({"text", "structured"}));
    convert_cmd->add_option("--to", conv_to, "output format")
        ->check(CLI::IsMember({"text", "structured"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*verify_cmd) {
            const pbtd::DesignArray design = parse_design(read_input(input), format);
            const pbtd::VerificationReport report = pbtd::verify(design);
            if (report_style == "machine")
                print_report_machine(report, std::cout);
            else
                print_report_text(report, std::cout);
            return report.valid ? kExitValid : kExitInvalid;
        }

        if (*search_cmd) {
            pbtd::SearchConfig config;
            config.engine = engine_name == "anneal" ? pbtd::SearchEngine::anneal
                                                    : pbtd::SearchEngine::backtrack;
            config.seed = seed;
            config.symmetry_break = symmetry_break;
            if (unbounded)
                config.time_budget_seconds.reset();
            else if (timeout_opt->count() > 0)
                config.time_budget_seconds = timeout;
            else
                config.time_budget_seconds = default_time_budget();
            config.progress = [](const pbtd::SearchProgress& p) {
                if (p.moves > 0)
                    std::cerr << "progress: moves " << p.moves << ", cost " << p.current_cost
                              << ", best " << p.best_cost << ", temperature " << p.temperature
                              << ", restarts " << p.restarts << ", elapsed " << p.elapsed_seconds
                              << "s\n";
                else
                    std::cerr << "progress: nodes " << p.nodes << ", elapsed "
                              << p.elapsed_seconds << "s\n";
            };
            const pbtd::Side side(side_n);

            if (count_mode) {
                const pbtd::CountResult result = pbtd::count_solutions(
                    side, config,
                    limit > 0 ? std::optional<std::uint64_t>(limit) : std::nullopt);
                std::cout << result.count << " solutions, search "
                          << (result.complete ? "complete" : "incomplete") << "\n";
                std::cerr << "stats: nodes " << result.stats.nodes << ", elapsed "
                          << result.stats.elapsed_seconds << "s\n";
                return result.count > 0 ? kExitValid : kExitInvalid;
            }

            if (limit > 0) config.solution_limit = limit;
            const pbtd::SearchOutcome outcome =
                portfolio > 0 ? pbtd::portfolio_search(side, config, portfolio)
                              : pbtd::run_search(side, config);
            std::cerr << "stats: nodes " << outcome.stats.nodes << ", moves "
                      << outcome.stats.moves << ", restarts " << outcome.stats.restarts
                      << ", elapsed " << outcome.stats.elapsed_seconds << "s\n";
            switch (outcome.kind) {
            case pbtd::OutcomeKind::found: {
                const std::string text = pbtd::emit_text(*outcome.design);
                if (out_path.empty()) {
                    std::cout << text;
                } else {
                    std::ofstream file(out_path, std::ios::binary);
                    if (!file) throw pbtd::Error(pbtd::Errc::token, "cannot write " + out_path);
                    file << text;
                    std::cerr << "design written to " << out_path << "\n";
                }
                return kExitValid;
            }
            case pbtd::OutcomeKind::exhausted_no_solution:
                std::cout << "nonexistent (exhaustive)\n";
                return kExitInvalid;
            case pbtd::OutcomeKind::timed_out:
                std::cout << "timed out, best cost " << outcome.best_cost << "\n";
                return kExitInvalid;
            }
        }

        if (*table1_cmd) {
            std::cout << emit_design(pbtd::table1(), table1_format);
            return kExitValid;
        }

        if (*convert_cmd) {
            const pbtd::DesignArray design = parse_design(read_input(conv_input), conv_from);
            std::cout << emit_design(design, conv_to);
            return kExitValid;
        }
    } catch (const pbtd::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
