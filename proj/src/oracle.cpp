#include "pcsp/oracle.hpp"

namespace pcsp::oracle {

namespace {

void check_budget(const Problem& problem, std::uint64_t budget) {
    const std::uint64_t count = problem.labeling_count();
    if (count > budget) {
        throw Error("problem '" + problem.name() + "' has " + std::to_string(count) +
                    " complete labelings, oracle budget is " + std::to_string(budget));
    }
}

} // namespace

void for_each_complete_labeling(const Problem& problem,
                                const std::function<void(const Labeling&)>& fn) {
    const auto& variables = problem.variables();
    std::vector<std::size_t> odo(variables.size(), 0);
    Labeling labeling;
    while (true) {
        for (std::size_t i = 0; i < variables.size(); ++i) {
            labeling.assign(variables[i].name(), variables[i].domain()[odo[i]]);
        }
        fn(labeling);
        std::size_t pos = variables.size();
        while (pos > 0) {
            --pos;
            if (++odo[pos] < variables[pos].domain().size()) break;
            odo[pos] = 0;
            if (pos == 0) return;
        }
        if (variables.empty()) return;
    }
}

BestSet enumerate_best(const Problem& problem, std::uint64_t budget) {
    check_budget(problem, budget);
    BestSet best{Degree::zero(), {}};
    bool first = true;
    for_each_complete_labeling(problem, [&](const Labeling& labeling) {
        const Degree value = pi_star(problem, labeling);
        if (first || value > best.consistency) {
            best.consistency = value;
            best.labelings.clear();
            first = false;
        }
        if (value == best.consistency) best.labelings.push_back(labeling);
    });
    return best;
}

Degree possibility_measure(const DistributionTable& table, const Constraint& k) {
    Degree sup = Degree::zero();
    for (const auto& [labeling, value] : table.entries) {
        if (satisfies(labeling, k)) sup = max(sup, value);
    }
    return sup;
}

Degree necessity_measure(const DistributionTable& table, const Constraint& k) {
    Degree inf = Degree::one();
    for (const auto& [labeling, value] : table.entries) {
        if (violates(labeling, k)) inf = min(inf, value.complement());
    }
    return inf;
}

Degree sub_normalization(const DistributionTable& table) {
    Degree sup = Degree::zero();
    for (const auto& [labeling, value] : table.entries) sup = max(sup, value);
    return sup.complement();
}

bool distribution_satisfies(const DistributionTable& table, const Problem& problem) {
    if (table.entries.size() != problem.labeling_count()) {
        throw Error("distribution table does not cover problem '" + problem.name() + "'");
    }
    for (const auto& [labeling, value] : table.entries) {
        check_labeling(problem, labeling, true);
    }
    for (const auto& vc : problem.constraints()) {
        if (necessity_measure(table, vc.constraint()) < vc.necessity()) return false;
    }
    return true;
}

DistributionTable pi_star_table(const Problem& problem, std::uint64_t budget) {
    check_budget(problem, budget);
    DistributionTable table;
    for_each_complete_labeling(problem, [&](const Labeling& labeling) {
        table.entries.emplace(labeling, pi_star(problem, labeling));
    });
    return table;
}

} // namespace pcsp::oracle
