#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pcsp/io.hpp"
#include "pcsp/oracle.hpp"
#include "pcsp/propagate.hpp"
#include "pcsp/search.hpp"

using json = nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw pcsp::Error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

/// FNV-1a over the input bytes; ties a report to the exact file content.
std::string digest(const std::string& bytes) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(hash));
    return out;
}

std::string labeling_line(const pcsp::Problem& problem, const pcsp::Labeling& labeling) {
    std::string line;
    for (const auto& var : problem.variables()) {
        if (!line.empty()) line += ' ';
        line += var.name() + "=" + labeling.at(var.name()).text();
    }
    return line;
}

json labeling_json(const pcsp::Problem& problem, const pcsp::Labeling& labeling) {
    json object = json::object();
    for (const auto& var : problem.variables()) {
        object[var.name()] = labeling.at(var.name()).text();
    }
    return object;
}

json report_head(const char* command, const std::string& path, const std::string& text) {
    json report = json::object();
    report["command"] = command;
    report["input"] = path;
    report["digest"] = digest(text);
    return report;
}

struct SolveFlags {
    std::string file;
    std::vector<std::string> order;
    std::string heuristic = "declared";
    std::string value_order = "declared";
    std::string alpha = "0";
    std::string beta = "1";
    bool all_best = false;
    bool forward_check = false;
    std::optional<std::uint64_t> node_limit;
    bool trace = false;
    bool json_output = false;
};

int run_solve(const SolveFlags& flags) {
    const std::string text = read_file(flags.file);
    const pcsp::Problem problem = pcsp::io::parse_problem(text);

    pcsp::search::SearchOptions options;
    if (!flags.order.empty()) options.variable_order = flags.order;
    if (flags.heuristic == "declared") {
        options.heuristic = pcsp::search::OrderTag::Declared;
    } else if (flags.heuristic == "max-degree") {
        options.heuristic = pcsp::search::OrderTag::MaxDegree;
    } else if (flags.heuristic == "max-cardinality") {
        options.heuristic = pcsp::search::OrderTag::MaxCardinality;
    } else {
        throw pcsp::Error("unknown heuristic '" + flags.heuristic + "'");
    }
    if (flags.value_order == "declared") {
        options.value_order = pcsp::search::ValueOrder::Declared;
    } else if (flags.value_order == "bound") {
        options.value_order = pcsp::search::ValueOrder::Bound;
    } else {
        throw pcsp::Error("unknown value order '" + flags.value_order + "'");
    }
    options.alpha0 = pcsp::Degree::parse(flags.alpha);
    options.beta0 = pcsp::Degree::parse(flags.beta);
    options.all_best = flags.all_best;
    options.forward_check = flags.forward_check;
    options.node_limit = flags.node_limit;

    std::vector<std::string> trace_lines;
    pcsp::search::TraceSink sink;
    if (flags.trace) {
        sink = [&](const pcsp::search::TraceEvent& event) {
            std::string line = std::to_string(event.depth) + " " + event.variable + "=" +
                               event.label.text() + " bound=" + event.bound.str() + " " +
                               std::string(pcsp::search::to_string(event.action));
            if (flags.json_output) {
                trace_lines.push_back(std::move(line));
            } else {
                std::cout << line << "\n";
            }
        };
    }

    const pcsp::search::SearchResult result = pcsp::search::solve(problem, options, sink);

    if (flags.json_output) {
        json report = report_head("solve", flags.file, text);
        report["status"] = pcsp::search::to_string(result.status);
        report["consistency"] = result.best_value.to_double();
        report["labelings"] = json::array();
        for (const auto& labeling : result.best_labelings) {
            report["labelings"].push_back(labeling_json(problem, labeling));
        }
        report["nodes"] = result.nodes_expanded;
        report["cutoffs"] = result.cutoffs;
        if (flags.trace) report["trace"] = trace_lines;
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << "consistency " << result.best_value.str() << "\n";
        for (const auto& labeling : result.best_labelings) {
            std::cout << labeling_line(problem, labeling) << "\n";
        }
        std::cout << "status " << pcsp::search::to_string(result.status) << "\n";
        std::cout << "nodes " << result.nodes_expanded << " cutoffs " << result.cutoffs
                  << "\n";
    }
    return result.status == pcsp::search::SearchStatus::AlphaPruned ? 2 : 0;
}

struct AcFlags {
    std::string file;
    std::string gamma = "0";
    std::string output;
    bool json_output = false;
};

int run_ac(const AcFlags& flags) {
    const std::string text = read_file(flags.file);
    const pcsp::Problem problem = pcsp::io::parse_problem(text);
    const pcsp::Degree gamma = pcsp::Degree::parse(flags.gamma);

    const pcsp::propagate::AcResult result = pcsp::propagate::enforce_ac(problem, gamma);

    if (!flags.output.empty()) {
        std::ofstream out(flags.output, std::ios::binary);
        if (!out) throw pcsp::Error("cannot write '" + flags.output + "'");
        out << pcsp::io::write_problem(result.closed_problem);
    }

    if (flags.json_output) {
        json report = report_head("ac", flags.file, text);
        report["delta"] = result.delta.to_double();
        report["inferences"] = json::array();
        for (const auto& inference : result.inferences) {
            json entry = json::object();
            entry["variable"] = inference.variable;
            entry["label"] = inference.label.text();
            entry["necessity"] = inference.necessity.to_double();
            report["inferences"].push_back(std::move(entry));
        }
        report["rounds"] = result.rounds;
        report["arc_consistent"] = result.arc_consistent;
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << "delta " << result.delta.str() << "\n";
        for (const auto& inference : result.inferences) {
            std::cout << "forbid " << inference.variable << "=" << inference.label.text()
                      << " necessity " << inference.necessity.str() << "\n";
        }
        std::cout << "rounds " << result.rounds << "\n";
        std::cout << "arc-consistent " << (result.arc_consistent ? "true" : "false")
                  << "\n";
    }
    return 0;
}

struct OracleFlags {
    std::string file;
    bool all_best = false;
    std::uint64_t budget = pcsp::oracle::default_budget;
    bool json_output = false;
};

int run_oracle(const OracleFlags& flags) {
    const std::string text = read_file(flags.file);
    const pcsp::Problem problem = pcsp::io::parse_problem(text);
    const pcsp::oracle::BestSet best = pcsp::oracle::enumerate_best(problem, flags.budget);

    if (flags.json_output) {
        json report = report_head("oracle", flags.file, text);
        report["consistency"] = best.consistency.to_double();
        if (flags.all_best) {
            report["labelings"] = json::array();
            for (const auto& labeling : best.labelings) {
                report["labelings"].push_back(labeling_json(problem, labeling));
            }
        }
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << "consistency " << best.consistency.str() << "\n";
        if (flags.all_best) {
            for (const auto& labeling : best.labelings) {
                std::cout << labeling_line(problem, labeling) << "\n";
            }
        }
    }
    return 0;
}

int run_check(const std::string& path, bool json_output) {
    const std::string text = read_file(path);
    const pcsp::Problem problem = pcsp::io::parse_problem(text);
    std::size_t max_arity = 0;
    for (const auto& vc : problem.constraints()) {
        max_arity = std::max(max_arity, vc.constraint().arity());
    }

    if (json_output) {
        json report = report_head("check", path, text);
        report["problem"] = problem.name();
        report["variables"] = problem.variables().size();
        report["constraints"] = problem.constraints().size();
        report["max_arity"] = max_arity;
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << "problem " << problem.name() << "\n";
        std::cout << "variables " << problem.variables().size() << "\n";
        std::cout << "constraints " << problem.constraints().size() << "\n";
        std::cout << "max-arity " << max_arity << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"necessity-valued constraint problems: solve, propagate, validate"};
    app.require_subcommand(1);

    SolveFlags solve_flags;
    CLI::App* solve_cmd = app.add_subcommand("solve", "branch-and-bound search");
    solve_cmd->add_option("file", solve_flags.file, "problem file")->required();
    solve_cmd->add_option("--order", solve_flags.order, "explicit variable order")
        ->delimiter(',');
    solve_cmd->add_option("--heuristic", solve_flags.heuristic,
                          "declared|max-degree|max-cardinality");
    solve_cmd->add_option("--value-order", solve_flags.value_order, "declared|bound");
    solve_cmd->add_option("--alpha", solve_flags.alpha, "cutoff floor");
    solve_cmd->add_option("--beta", solve_flags.beta, "stop threshold");
    solve_cmd->add_flag("--all-best", solve_flags.all_best, "collect every best labeling");
    solve_cmd->add_flag("--forward-check", solve_flags.forward_check,
                        "look ahead over future variables");
    std::uint64_t node_limit = 0;
    CLI::Option* limit_option =
        solve_cmd->add_option("--node-limit", node_limit, "node budget");
    solve_cmd->add_flag("--trace", solve_flags.trace, "print one line per search node");
    solve_cmd->add_flag("--json", solve_flags.json_output, "structured output");

    AcFlags ac_flags;
    CLI::App* ac_cmd = app.add_subcommand("ac", "arc-consistency enforcement");
    ac_cmd->add_option("file", ac_flags.file, "problem file")->required();
    ac_cmd->add_option("--gamma", ac_flags.gamma, "minimum inference necessity");
    ac_cmd->add_option("--output", ac_flags.output, "write the closed problem here");
    ac_cmd->add_flag("--json", ac_flags.json_output, "structured output");

    OracleFlags oracle_flags;
    CLI::App* oracle_cmd = app.add_subcommand("oracle", "exhaustive reference solver");
    oracle_cmd->add_option("file", oracle_flags.file, "problem file")->required();
    oracle_cmd->add_flag("--all-best", oracle_flags.all_best, "list every best labeling");
    oracle_cmd->add_option("--budget", oracle_flags.budget, "labeling enumeration cap");
    oracle_cmd->add_flag("--json", oracle_flags.json_output, "structured output");

    std::string check_file;
    bool check_json = false;
    CLI::App* check_cmd = app.add_subcommand("check", "validate a problem file");
    check_cmd->add_option("file", check_file, "problem file")->required();
    check_cmd->add_flag("--json", check_json, "structured output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (solve_cmd->parsed()) {
            if (limit_option->count() > 0) solve_flags.node_limit = node_limit;
            return run_solve(solve_flags);
        }
        if (ac_cmd->parsed()) return run_ac(ac_flags);
        if (oracle_cmd->parsed()) return run_oracle(oracle_flags);
        if (check_cmd->parsed()) return run_check(check_file, check_json);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
