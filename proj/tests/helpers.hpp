#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcsp/core.hpp"
#include "pcsp/io.hpp"

inline pcsp::Degree deg(const char* text) { return pcsp::Degree::parse(text); }

inline pcsp::Labeling
lab(std::initializer_list<std::pair<const char*, const char*>> items) {
    pcsp::Labeling labeling;
    for (const auto& [variable, label] : items) {
        labeling.assign(variable, pcsp::Label(label));
    }
    return labeling;
}

inline const pcsp::Problem& menu() {
    static const pcsp::Problem problem = pcsp::io::builtin_menu();
    return problem;
}

/// The menu a dish-first search reports first: fish with white wine,
/// foie gras before, apple pie after.
inline pcsp::Labeling menu_best() {
    return lab({{"drink", "white-wine"},
                {"entrance", "foie-gras"},
                {"dish", "fish"},
                {"dessert", "apple-pie"}});
}

/// n-queens as an all-hard problem: variables q1..qn with domains 1..n
/// (the row of the queen in each column), one FORBID constraint per column
/// pair listing the attacking row combinations.
inline pcsp::Problem queens(int n) {
    using namespace pcsp;
    std::vector<Label> rows;
    for (int r = 1; r <= n; ++r) rows.emplace_back(std::to_string(r));

    std::vector<DomainVariable> variables;
    for (int c = 1; c <= n; ++c) {
        variables.emplace_back("q" + std::to_string(c), rows);
    }

    std::vector<ValuedConstraint> constraints;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            std::set<std::vector<Label>> attacks;
            for (int ri = 1; ri <= n; ++ri) {
                for (int rj = 1; rj <= n; ++rj) {
                    if (ri == rj || ri - rj == i - j || ri - rj == j - i) {
                        attacks.insert({rows[ri - 1], rows[rj - 1]});
                    }
                }
            }
            const std::string id = "c" + std::to_string(i) + std::to_string(j);
            constraints.emplace_back(
                id,
                Constraint({"q" + std::to_string(i), "q" + std::to_string(j)},
                           std::move(attacks), ConstraintMode::Forbid),
                Degree::one());
        }
    }
    return Problem(std::to_string(n) + "-queens", std::move(variables),
                   std::move(constraints));
}

struct ClassicalResult {
    std::optional<pcsp::Labeling> solution;
    std::uint64_t nodes = 0;
};

/// First-solution chronological backtracking on an all-hard problem,
/// counting every assignment attempt.  Reference for node-count parity
/// with the branch-and-bound solver in first-solution mode.
inline ClassicalResult classical_bt(const pcsp::Problem& problem,
                                    const std::vector<std::string>& order) {
    ClassicalResult result;
    pcsp::Labeling partial;
    std::function<bool(std::size_t)> go = [&](std::size_t depth) -> bool {
        const auto& domain = problem.variable(order[depth]).domain();
        for (const pcsp::Label& label : domain) {
            ++result.nodes;
            partial.assign(order[depth], label);
            if (pcsp::classical_consistent(problem, partial)) {
                if (depth + 1 == order.size()) {
                    result.solution = partial;
                    partial.unassign(order[depth]);
                    return true;
                }
                if (go(depth + 1)) {
                    partial.unassign(order[depth]);
                    return true;
                }
            }
            partial.unassign(order[depth]);
        }
        return false;
    };
    if (!order.empty()) go(0);
    return result;
}

/// Deterministic generator parameters cycling through small shapes; used
/// by the property tests so each seed exercises a different corner.
inline pcsp::io::GeneratorSpec property_spec(std::uint64_t seed, int max_vars) {
    pcsp::io::GeneratorSpec spec;
    spec.seed = seed;
    spec.n_vars = 2 + static_cast<int>(seed % static_cast<std::uint64_t>(max_vars - 1));
    spec.domain_size = 2 + static_cast<int>((seed / 7) % 3);
    spec.max_arity = 1 + static_cast<int>((seed / 3) % 3);
    if (spec.max_arity > spec.n_vars) spec.max_arity = spec.n_vars;
    spec.n_constraints = 1 + static_cast<int>((seed / 5) % 6);
    static const double tightness[] = {0.2, 0.3, 0.5, 0.7, 0.9, 1.0, 0.0};
    spec.tightness = tightness[seed % 7];
    spec.necessity_levels = {deg("0.2"), deg("0.5"), deg("0.8"), deg("1")};
    return spec;
}
