#include "pcsp/core.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace pcsp {

namespace {

const char* reserved_chars = "#;{}";

/// Calls fn with every tuple over the given domains, in lexicographic
/// order with the last position varying fastest.
template <typename Fn>
void for_each_tuple(const std::vector<const DomainVariable*>& scope, Fn&& fn) {
    std::vector<std::size_t> odo(scope.size(), 0);
    std::vector<Label> tuple;
    while (true) {
        tuple.clear();
        for (std::size_t i = 0; i < scope.size(); ++i) {
            tuple.push_back(scope[i]->domain()[odo[i]]);
        }
        fn(tuple);
        std::size_t pos = scope.size();
        while (pos > 0) {
            --pos;
            if (++odo[pos] < scope[pos]->domain().size()) break;
            odo[pos] = 0;
            if (pos == 0) return;
        }
        if (scope.empty()) return;
    }
}

} // namespace

bool is_token(std::string_view text) {
    if (text.empty()) return false;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) return false;
        for (const char* r = reserved_chars; *r; ++r) {
            if (c == *r) return false;
        }
    }
    return true;
}

Label::Label(std::string text) : text_(std::move(text)) {
    if (!is_token(text_)) throw Error("bad label '" + text_ + "'");
}

DomainVariable::DomainVariable(std::string name, std::vector<Label> domain)
    : name_(std::move(name)), domain_(std::move(domain)) {
    if (!is_token(name_)) throw Error("bad variable name '" + name_ + "'");
    if (domain_.empty()) throw Error("variable '" + name_ + "' has an empty domain");
    std::set<Label> seen(domain_.begin(), domain_.end());
    if (seen.size() != domain_.size()) {
        throw Error("variable '" + name_ + "' repeats a domain label");
    }
}

bool DomainVariable::contains(const Label& label) const {
    return std::find(domain_.begin(), domain_.end(), label) != domain_.end();
}

Labeling::Labeling(std::map<std::string, Label> assignments)
    : assignments_(std::move(assignments)) {}

bool Labeling::assigns(const std::string& variable) const {
    return assignments_.count(variable) != 0;
}

const Label* Labeling::find(const std::string& variable) const {
    auto it = assignments_.find(variable);
    return it == assignments_.end() ? nullptr : &it->second;
}

const Label& Labeling::at(const std::string& variable) const {
    auto it = assignments_.find(variable);
    if (it == assignments_.end()) {
        throw Error("labeling does not assign variable '" + variable + "'");
    }
    return it->second;
}

void Labeling::assign(const std::string& variable, Label label) {
    assignments_.insert_or_assign(variable, std::move(label));
}

void Labeling::unassign(const std::string& variable) {
    assignments_.erase(variable);
}

bool more_defined(const Labeling& fine, const Labeling& coarse) {
    for (const auto& [variable, label] : coarse.assignments()) {
        const Label* assigned = fine.find(variable);
        if (assigned == nullptr || *assigned != label) return false;
    }
    return true;
}

Constraint::Constraint(std::vector<std::string> scope,
                       std::set<std::vector<Label>> tuples,
                       ConstraintMode mode)
    : scope_(std::move(scope)), tuples_(std::move(tuples)), mode_(mode) {
    if (scope_.empty()) throw Error("constraint scope is empty");
    std::set<std::string> seen;
    for (const auto& name : scope_) {
        if (!is_token(name)) throw Error("bad scope variable '" + name + "'");
        if (!seen.insert(name).second) {
            throw Error("constraint scope repeats variable '" + name + "'");
        }
    }
    for (const auto& tuple : tuples_) {
        if (tuple.size() != scope_.size()) {
            throw Error("constraint tuple arity does not match its scope");
        }
    }
}

bool Constraint::accepts(const std::vector<Label>& tuple) const {
    const bool listed = tuples_.count(tuple) != 0;
    return mode_ == ConstraintMode::Allow ? listed : !listed;
}

ValuedConstraint::ValuedConstraint(std::string id, Constraint constraint,
                                   Degree necessity)
    : id_(std::move(id)), constraint_(std::move(constraint)), necessity_(necessity) {
    if (!is_token(id_)) throw Error("bad constraint id '" + id_ + "'");
}

Problem::Problem(std::string name,
                 std::vector<DomainVariable> variables,
                 std::vector<ValuedConstraint> constraints)
    : name_(std::move(name)),
      variables_(std::move(variables)),
      constraints_(std::move(constraints)) {
    if (!is_token(name_)) throw Error("bad problem name '" + name_ + "'");
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (!index_.emplace(variables_[i].name(), i).second) {
            throw Error("duplicate variable '" + variables_[i].name() + "'");
        }
    }
    std::set<std::string> ids;
    for (const auto& vc : constraints_) {
        if (!ids.insert(vc.id()).second) {
            throw Error("duplicate constraint id '" + vc.id() + "'");
        }
        const auto& k = vc.constraint();
        std::vector<const DomainVariable*> scope_vars;
        for (const auto& name : k.scope()) {
            const DomainVariable* var = find_variable(name);
            if (var == nullptr) {
                throw Error("constraint '" + vc.id() + "' refers to unknown variable '" +
                            name + "'");
            }
            scope_vars.push_back(var);
        }
        for (const auto& tuple : k.tuples()) {
            for (std::size_t i = 0; i < tuple.size(); ++i) {
                if (!scope_vars[i]->contains(tuple[i])) {
                    throw Error("constraint '" + vc.id() + "' uses label '" +
                                tuple[i].text() + "' outside the domain of '" +
                                scope_vars[i]->name() + "'");
                }
            }
        }
    }
}

const DomainVariable* Problem::find_variable(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &variables_[it->second];
}

const DomainVariable& Problem::variable(const std::string& name) const {
    const DomainVariable* var = find_variable(name);
    if (var == nullptr) throw Error("unknown variable '" + name + "'");
    return *var;
}

std::optional<std::size_t> Problem::variable_index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const ValuedConstraint* Problem::find_constraint(const std::string& id) const {
    for (const auto& vc : constraints_) {
        if (vc.id() == id) return &vc;
    }
    return nullptr;
}

Problem Problem::with_constraint(ValuedConstraint constraint) const {
    auto constraints = constraints_;
    constraints.push_back(std::move(constraint));
    return Problem(name_, variables_, std::move(constraints));
}

std::uint64_t Problem::labeling_count() const {
    std::uint64_t count = 1;
    for (const auto& var : variables_) {
        const std::uint64_t size = var.domain().size();
        if (count > std::numeric_limits<std::uint64_t>::max() / size) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        count *= size;
    }
    return count;
}

bool covers_scope(const Labeling& labeling, const Constraint& constraint) {
    for (const auto& name : constraint.scope()) {
        if (!labeling.assigns(name)) return false;
    }
    return true;
}

namespace {

bool restriction_accepted(const Labeling& labeling, const Constraint& constraint,
                          bool* covered) {
    std::vector<Label> tuple;
    tuple.reserve(constraint.arity());
    for (const auto& name : constraint.scope()) {
        const Label* label = labeling.find(name);
        if (label == nullptr) {
            *covered = false;
            return false;
        }
        tuple.push_back(*label);
    }
    *covered = true;
    return constraint.accepts(tuple);
}

} // namespace

bool satisfies(const Labeling& labeling, const Constraint& constraint) {
    bool covered = false;
    const bool accepted = restriction_accepted(labeling, constraint, &covered);
    return covered && accepted;
}

bool violates(const Labeling& labeling, const Constraint& constraint) {
    bool covered = false;
    const bool accepted = restriction_accepted(labeling, constraint, &covered);
    return covered && !accepted;
}

Constraint negate(const Constraint& constraint) {
    const auto mode = constraint.mode() == ConstraintMode::Allow
                          ? ConstraintMode::Forbid
                          : ConstraintMode::Allow;
    return Constraint(constraint.scope(), constraint.tuples(), mode);
}

namespace {

Constraint combine(const Constraint& a, const Constraint& b,
                   std::span<const DomainVariable> universe, bool conjunction) {
    std::vector<std::string> scope = a.scope();
    for (const auto& name : b.scope()) {
        if (std::find(scope.begin(), scope.end(), name) == scope.end()) {
            scope.push_back(name);
        }
    }

    std::vector<const DomainVariable*> scope_vars;
    for (const auto& name : scope) {
        auto it = std::find_if(universe.begin(), universe.end(),
                               [&](const DomainVariable& v) { return v.name() == name; });
        if (it == universe.end()) {
            throw Error("combined constraint variable '" + name +
                        "' is missing from the given variables");
        }
        scope_vars.push_back(&*it);
    }

    const auto positions = [&](const Constraint& k) {
        std::vector<std::size_t> pos;
        for (const auto& name : k.scope()) {
            pos.push_back(std::find(scope.begin(), scope.end(), name) - scope.begin());
        }
        return pos;
    };
    const auto pos_a = positions(a);
    const auto pos_b = positions(b);

    std::set<std::vector<Label>> accepted;
    std::vector<Label> sub;
    for_each_tuple(scope_vars, [&](const std::vector<Label>& tuple) {
        const auto project_accepts = [&](const Constraint& k,
                                         const std::vector<std::size_t>& pos) {
            sub.clear();
            for (std::size_t p : pos) sub.push_back(tuple[p]);
            return k.accepts(sub);
        };
        const bool in_a = project_accepts(a, pos_a);
        const bool in_b = project_accepts(b, pos_b);
        if (conjunction ? (in_a && in_b) : (in_a || in_b)) accepted.insert(tuple);
    });
    return Constraint(std::move(scope), std::move(accepted), ConstraintMode::Allow);
}

} // namespace

Constraint conjoin(const Constraint& a, const Constraint& b,
                   std::span<const DomainVariable> universe) {
    return combine(a, b, universe, true);
}

Constraint disjoin(const Constraint& a, const Constraint& b,
                   std::span<const DomainVariable> universe) {
    return combine(a, b, universe, false);
}

void check_labeling(const Problem& problem, const Labeling& labeling,
                    bool require_complete) {
    for (const auto& [name, label] : labeling.assignments()) {
        const DomainVariable* var = problem.find_variable(name);
        if (var == nullptr) {
            throw Error("labeling assigns unknown variable '" + name + "'");
        }
        if (!var->contains(label)) {
            throw Error("label '" + label.text() + "' is outside the domain of '" +
                        name + "'");
        }
    }
    if (require_complete && labeling.size() != problem.variables().size()) {
        throw Error("labeling is not complete for problem '" + problem.name() + "'");
    }
}

Degree pi_star(const Problem& problem, const Labeling& labeling) {
    check_labeling(problem, labeling, true);
    Degree value = Degree::one();
    for (const auto& vc : problem.constraints()) {
        if (violates(labeling, vc.constraint())) {
            value = min(value, vc.necessity().complement());
        }
    }
    return value;
}

Degree partial_bound(const Problem& problem, const Labeling& labeling) {
    check_labeling(problem, labeling, false);
    Degree value = Degree::one();
    for (const auto& vc : problem.constraints()) {
        if (violates(labeling, vc.constraint())) {
            value = min(value, vc.necessity().complement());
        }
    }
    return value;
}

bool classical_consistent(const Problem& problem, const Labeling& labeling) {
    check_labeling(problem, labeling, false);
    for (const auto& vc : problem.constraints()) {
        if (vc.necessity() != Degree::one()) {
            throw Error("constraint '" + vc.id() +
                        "' is soft; the classical reading needs necessity 1 throughout");
        }
    }
    for (const auto& vc : problem.constraints()) {
        if (violates(labeling, vc.constraint())) return false;
    }
    return true;
}

} // namespace pcsp
