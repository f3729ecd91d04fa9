#include "pcsp/propagate.hpp"

#include <algorithm>

namespace pcsp::propagate {

namespace {

/// Compatibility of a single (variable, label) choice under the problem's
/// unary constraints alone.
Degree unary_compatibility(const Problem& problem, const std::string& variable,
                           const Label& label) {
    Labeling single;
    single.assign(variable, label);
    Degree value = Degree::one();
    for (const auto& vc : problem.constraints()) {
        const Constraint& k = vc.constraint();
        if (k.arity() != 1 || k.scope()[0] != variable) continue;
        if (violates(single, k)) value = min(value, vc.necessity().complement());
    }
    return value;
}

} // namespace

Degree bound_b(const Problem& problem, const std::string& variable, const Label& label,
               const ValuedConstraint& k) {
    const Constraint& constraint = k.constraint();
    const auto& scope = constraint.scope();
    const auto it = std::find(scope.begin(), scope.end(), variable);
    if (it == scope.end()) {
        throw Error("variable '" + variable + "' is not in the scope of '" + k.id() + "'");
    }
    if (constraint.arity() < 2) {
        throw Error("constraint '" + k.id() + "' is unary; the bound needs a wider scope");
    }
    const std::size_t fixed = static_cast<std::size_t>(it - scope.begin());

    std::vector<const DomainVariable*> scope_vars;
    for (const auto& name : scope) scope_vars.push_back(&problem.variable(name));
    if (!scope_vars[fixed]->contains(label)) {
        throw Error("label '" + label.text() + "' is outside the domain of '" + variable +
                    "'");
    }

    std::vector<const ValuedConstraint*> unary;
    for (const auto& vc : problem.constraints()) {
        const Constraint& u = vc.constraint();
        if (u.arity() != 1) continue;
        if (std::find(scope.begin(), scope.end(), u.scope()[0]) != scope.end()) {
            unary.push_back(&vc);
        }
    }

    std::vector<std::size_t> free;
    for (std::size_t m = 0; m < scope.size(); ++m) {
        if (m != fixed) free.push_back(m);
    }

    Degree sup = Degree::zero();
    std::vector<std::size_t> odo(free.size(), 0);
    Labeling candidate;
    while (true) {
        for (std::size_t i = 0; i < free.size(); ++i) {
            const std::size_t m = free[i];
            candidate.assign(scope[m], scope_vars[m]->domain()[odo[i]]);
        }
        candidate.assign(variable, label);

        Degree value = Degree::one();
        if (violates(candidate, constraint)) value = min(value, k.necessity().complement());
        for (const ValuedConstraint* u : unary) {
            if (violates(candidate, u->constraint())) {
                value = min(value, u->necessity().complement());
            }
        }
        sup = max(sup, value);
        if (sup == Degree::one()) break;

        std::size_t i = free.size();
        bool done = free.empty();
        while (i > 0) {
            --i;
            if (++odo[i] < scope_vars[free[i]]->domain().size()) break;
            odo[i] = 0;
            if (i == 0) done = true;
        }
        if (done) break;
    }
    return sup;
}

std::vector<UnaryInference> revise(const Problem& problem, const std::string& variable,
                                   const ValuedConstraint& k) {
    std::vector<UnaryInference> inferences;
    for (const Label& label : problem.variable(variable).domain()) {
        const Degree bound = bound_b(problem, variable, label, k);
        const Degree current = unary_compatibility(problem, variable, label);
        if (bound < current) {
            inferences.push_back(UnaryInference{variable, label, bound.complement()});
        }
    }
    return inferences;
}

namespace {

using InferredMap = std::map<std::pair<std::size_t, std::size_t>, Degree>;

Problem with_inferences(const Problem& base, const InferredMap& inferred) {
    auto constraints = base.constraints();
    std::set<std::string> used;
    for (const auto& vc : constraints) used.insert(vc.id());
    for (const auto& [key, necessity] : inferred) {
        const DomainVariable& var = base.variables()[key.first];
        const Label& label = var.domain()[key.second];
        std::string id = "ac:" + var.name() + ":" + label.text();
        while (used.count(id) != 0) id += "+";
        used.insert(id);
        constraints.emplace_back(
            id,
            Constraint({var.name()}, std::set<std::vector<Label>>{{label}},
                       ConstraintMode::Forbid),
            necessity);
    }
    return Problem(base.name(), base.variables(), std::move(constraints));
}

} // namespace

AcResult enforce_ac(const Problem& problem, Degree gamma) {
    InferredMap inferred;
    Problem working = problem;

    int rounds = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        ++rounds;
        for (std::size_t vi = 0; vi < problem.variables().size(); ++vi) {
            const std::string& name = problem.variables()[vi].name();
            for (const auto& vc : problem.constraints()) {
                const Constraint& k = vc.constraint();
                if (k.arity() < 2) continue;
                if (std::find(k.scope().begin(), k.scope().end(), name) == k.scope().end()) {
                    continue;
                }
                for (const UnaryInference& inf : revise(working, name, vc)) {
                    if (inf.necessity < gamma) continue;
                    const auto& domain = problem.variables()[vi].domain();
                    const std::size_t li = static_cast<std::size_t>(
                        std::find(domain.begin(), domain.end(), inf.label) - domain.begin());
                    const auto key = std::make_pair(vi, li);
                    const auto it = inferred.find(key);
                    if (it == inferred.end() || it->second < inf.necessity) {
                        inferred[key] = inf.necessity;
                        working = with_inferences(problem, inferred);
                        changed = true;
                    }
                }
            }
        }
    }

    AcResult result{std::move(working), Degree::one(), {}, rounds, true};
    for (const auto& [key, necessity] : inferred) {
        const DomainVariable& var = problem.variables()[key.first];
        result.inferences.push_back(
            UnaryInference{var.name(), var.domain()[key.second], necessity});
    }
    for (const auto& var : problem.variables()) {
        Degree best = Degree::zero();
        for (const Label& label : var.domain()) {
            best = max(best, unary_compatibility(result.closed_problem, var.name(), label));
        }
        result.delta = min(result.delta, best);
    }
    result.arc_consistent = result.delta != Degree::zero();
    return result;
}

BoundTable forward_check(const Problem& problem, const Labeling& partial,
                         const std::set<std::string>& unassigned) {
    check_labeling(problem, partial, false);
    for (const auto& name : unassigned) {
        problem.variable(name);
        if (partial.assigns(name)) {
            throw Error("variable '" + name + "' is already assigned");
        }
    }

    BoundTable table;
    for (const auto& name : unassigned) {
        const DomainVariable& var = problem.variable(name);
        auto& row = table[name];
        for (const Label& label : var.domain()) {
            Labeling extended = partial;
            extended.assign(name, label);
            Degree bound = Degree::one();
            for (const auto& vc : problem.constraints()) {
                const auto& scope = vc.constraint().scope();
                if (std::find(scope.begin(), scope.end(), name) == scope.end()) continue;
                const bool applicable =
                    std::all_of(scope.begin(), scope.end(), [&](const std::string& s) {
                        return s == name || partial.assigns(s);
                    });
                if (!applicable) continue;
                if (violates(extended, vc.constraint())) {
                    bound = min(bound, vc.necessity().complement());
                }
            }
            row.emplace_back(label, bound);
        }
    }
    return table;
}

} // namespace pcsp::propagate
