#include "doctest.h"

#ifdef PCSP_CLI_PATH

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "helpers.hpp"
#include "pcsp/io.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string command = std::string(PCSP_CLI_PATH) + " " + args + " 2>&1";
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buffer[4096];
    while (std::fgets(buffer, sizeof buffer, pipe) != nullptr) {
        result.output += buffer;
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string menu_path() { return std::string(PCSP_DATA_DIR) + "/menu.pcsp"; }

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::string current;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) lines.push_back(current);
    return lines;
}

class TempFile {
public:
    TempFile(const std::string& stem, const std::string& content)
        : path_(std::filesystem::temp_directory_path() / stem) {
        std::ofstream out(path_);
        out << content;
    }
    ~TempFile() { std::filesystem::remove(path_); }
    std::string path() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

} // namespace

TEST_CASE("cli solve reports the menu answer") {
    const auto result = run_cli("solve " + menu_path());
    CHECK(result.exit_code == 0);
    CHECK(contains(result.output, "consistency 0.8\n"));
    CHECK(contains(result.output, "status OPTIMAL\n"));
    CHECK(contains(result.output, "nodes "));
    CHECK(contains(result.output, "cutoffs "));
}

TEST_CASE("cli solve prints the classic menu first under the dish-first order") {
    const auto result =
        run_cli("solve " + menu_path() + " --order dish,drink,entrance,dessert");
    CHECK(result.exit_code == 0);
    const auto lines = lines_of(result.output);
    REQUIRE(lines.size() >= 2);
    CHECK(lines[0] == "consistency 0.8");
    CHECK(lines[1] == "drink=white-wine entrance=foie-gras dish=fish dessert=apple-pie");
}

TEST_CASE("cli solve --all-best lists five labelings") {
    const auto result = run_cli("solve " + menu_path() + " --all-best");
    CHECK(result.exit_code == 0);
    int labeling_lines = 0;
    for (const auto& line : lines_of(result.output)) {
        if (contains(line, "dish=")) ++labeling_lines;
    }
    CHECK(labeling_lines == 5);
}

TEST_CASE("cli solve exit code distinguishes alpha pruning") {
    const auto result = run_cli("solve " + menu_path() + " --alpha 0.9");
    CHECK(result.exit_code == 2);
    CHECK(contains(result.output, "status ALPHA-PRUNED\n"));
    CHECK(contains(result.output, "consistency 0.9\n"));
}

TEST_CASE("cli solve honors beta and node limits") {
    const auto beta = run_cli("solve " + menu_path() + " --beta 0.5");
    CHECK(beta.exit_code == 0);
    CHECK(contains(beta.output, "status BETA-STOPPED\n"));

    const auto budget = run_cli("solve " + menu_path() + " --node-limit 5");
    CHECK(budget.exit_code == 0);
    CHECK(contains(budget.output, "status BUDGET-EXHAUSTED\n"));
    CHECK(contains(budget.output, "nodes 5 "));
}

TEST_CASE("cli solve trace lines are well formed") {
    const auto result = run_cli("solve " + menu_path() +
                                " --order dish,drink,entrance,dessert --trace");
    CHECK(result.exit_code == 0);
    const auto lines = lines_of(result.output);
    REQUIRE(!lines.empty());
    CHECK(lines[0] == "1 dish=fish bound=0.8 EXTEND");
    int events = 0;
    for (const auto& line : lines) {
        if (contains(line, "bound=")) {
            ++events;
            const bool tagged = contains(line, " EXTEND") || contains(line, " CUTOFF") ||
                                contains(line, " LEAF") || contains(line, " IMPROVE");
            CHECK(tagged);
        }
    }
    std::string nodes_line;
    for (const auto& line : lines) {
        if (line.rfind("nodes ", 0) == 0) nodes_line = line;
    }
    REQUIRE(!nodes_line.empty());
    CHECK(events == std::atoi(nodes_line.c_str() + 6));
}

TEST_CASE("cli solve --json emits a machine readable report") {
    const auto result = run_cli("solve " + menu_path() + " --all-best --json");
    CHECK(result.exit_code == 0);
    const auto report = nlohmann::json::parse(result.output);
    CHECK(report["command"] == "solve");
    CHECK(report["status"] == "OPTIMAL");
    CHECK(report["consistency"] == 0.8);
    CHECK(report["labelings"].size() == 5);
    CHECK(report["labelings"][0]["dish"] == "fish");
    CHECK(report["digest"].get<std::string>().size() == 16);
    CHECK(report["nodes"].is_number_unsigned());
}

TEST_CASE("cli ac reports delta and the inferred restrictions") {
    const auto result = run_cli("ac " + menu_path());
    CHECK(result.exit_code == 0);
    CHECK(contains(result.output, "delta 0.8\n"));
    CHECK(contains(result.output, "forbid drink=white-wine necessity 0.2\n"));
    CHECK(contains(result.output, "arc-consistent true\n"));
    CHECK(contains(result.output, "rounds "));

    const auto strict = run_cli("ac " + menu_path() + " --gamma 1.0");
    CHECK(strict.exit_code == 0);
    CHECK_FALSE(contains(strict.output, "forbid"));
}

TEST_CASE("cli ac --output writes the closed problem") {
    TempFile closed("pcsp_cli_closed.pcsp", "");
    const auto result = run_cli("ac " + menu_path() + " --output " + closed.path());
    CHECK(result.exit_code == 0);
    std::ifstream in(closed.path());
    std::stringstream buffer;
    buffer << in.rdbuf();
    const pcsp::Problem parsed = pcsp::io::parse_problem(buffer.str());
    CHECK(parsed.constraints().size() > menu().constraints().size());
    CHECK(parsed.find_constraint("ac:drink:white-wine") != nullptr);
}

TEST_CASE("cli ac --json lists inferences as objects") {
    const auto result = run_cli("ac " + menu_path() + " --json");
    CHECK(result.exit_code == 0);
    const auto report = nlohmann::json::parse(result.output);
    CHECK(report["delta"] == 0.8);
    CHECK(report["arc_consistent"] == true);
    bool found = false;
    for (const auto& inference : report["inferences"]) {
        if (inference["variable"] == "drink" && inference["label"] == "white-wine") {
            CHECK(inference["necessity"] == 0.2);
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("cli oracle matches solve") {
    const auto result = run_cli("oracle " + menu_path() + " --all-best");
    CHECK(result.exit_code == 0);
    CHECK(contains(result.output, "consistency 0.8\n"));
    int labeling_lines = 0;
    for (const auto& line : lines_of(result.output)) {
        if (contains(line, "dish=")) ++labeling_lines;
    }
    CHECK(labeling_lines == 5);

    const auto tight = run_cli("oracle " + menu_path() + " --budget 10");
    CHECK(tight.exit_code == 1);
    CHECK(contains(tight.output, "error:"));
}

TEST_CASE("cli check summarizes a problem") {
    const auto result = run_cli("check " + menu_path());
    CHECK(result.exit_code == 0);
    CHECK(contains(result.output, "problem menu\n"));
    CHECK(contains(result.output, "variables 4\n"));
    CHECK(contains(result.output, "constraints 15\n"));
    CHECK(contains(result.output, "max-arity 2\n"));
}

TEST_CASE("cli check rejects bad input with a line number") {
    TempFile bad("pcsp_cli_bad.pcsp", "problem p\nvar x :\n");
    const auto result = run_cli("check " + bad.path());
    CHECK(result.exit_code == 1);
    CHECK(contains(result.output, "error:"));
    CHECK(contains(result.output, "line 2"));
}

TEST_CASE("cli solve works on a constraint-free problem") {
    TempFile free_problem("pcsp_cli_free.pcsp", "problem free\nvar x : a b\n");
    const auto result = run_cli("solve " + free_problem.path());
    CHECK(result.exit_code == 0);
    CHECK(contains(result.output, "consistency 1\n"));
    CHECK(contains(result.output, "x=a\n"));
}

TEST_CASE("cli rejects missing files and unknown flags") {
    CHECK(run_cli("solve /nonexistent.pcsp").exit_code == 1);
    CHECK(run_cli("frobnicate " + menu_path()).exit_code != 0);
    CHECK(run_cli("solve " + menu_path() + " --alpha nope").exit_code == 1);
}

#endif // PCSP_CLI_PATH
