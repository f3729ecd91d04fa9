#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcsp/degree.hpp"
#include "pcsp/error.hpp"

namespace pcsp {

/// True if `text` can serve as a name in problems and files: non-empty,
/// no whitespace, and none of the reserved punctuation `# ; { }`.
bool is_token(std::string_view text);

/// One element of a variable's domain.
class Label {
public:
    explicit Label(std::string text);

    const std::string& text() const { return text_; }

    auto operator<=>(const Label&) const = default;

private:
    std::string text_;
};

/// A decision variable with a finite, ordered domain.  The declared domain
/// order is also the default branching order during search.
class DomainVariable {
public:
    DomainVariable(std::string name, std::vector<Label> domain);

    const std::string& name() const { return name_; }
    const std::vector<Label>& domain() const { return domain_; }
    bool contains(const Label& label) const;

    auto operator<=>(const DomainVariable&) const = default;

private:
    std::string name_;
    std::vector<Label> domain_;
};

/// A partial or complete assignment of labels to variables.  Plain value
/// type; the solver copies and mutates working labelings freely.
class Labeling {
public:
    Labeling() = default;
    explicit Labeling(std::map<std::string, Label> assignments);

    const std::map<std::string, Label>& assignments() const { return assignments_; }

    bool assigns(const std::string& variable) const;
    /// The assigned label, or nullptr when the variable is unassigned.
    const Label* find(const std::string& variable) const;
    /// The assigned label; throws Error when the variable is unassigned.
    const Label& at(const std::string& variable) const;

    void assign(const std::string& variable, Label label);
    void unassign(const std::string& variable);

    std::size_t size() const { return assignments_.size(); }
    bool empty() const { return assignments_.empty(); }

    auto operator<=>(const Labeling&) const = default;

private:
    std::map<std::string, Label> assignments_;
};

/// Whether `fine` assigns everything `coarse` assigns, to the same labels.
/// Every labeling is more defined than the empty one and than itself.
bool more_defined(const Labeling& fine, const Labeling& coarse);

enum class ConstraintMode { Allow, Forbid };

/// An extensional relation over an ordered scope of variables.  In Allow
/// mode the tuple set lists exactly the accepted combinations; in Forbid
/// mode it lists the rejected ones and everything else is accepted.
class Constraint {
public:
    Constraint(std::vector<std::string> scope,
               std::set<std::vector<Label>> tuples,
               ConstraintMode mode);

    const std::vector<std::string>& scope() const { return scope_; }
    const std::set<std::vector<Label>>& tuples() const { return tuples_; }
    ConstraintMode mode() const { return mode_; }
    std::size_t arity() const { return scope_.size(); }

    /// Membership in the accepted relation, taking the mode into account.
    /// `tuple` must follow the scope order.
    bool accepts(const std::vector<Label>& tuple) const;

    auto operator<=>(const Constraint&) const = default;

private:
    std::vector<std::string> scope_;
    std::set<std::vector<Label>> tuples_;
    ConstraintMode mode_;
};

/// A constraint together with its priority: the necessity degree says how
/// imperative satisfying the constraint is.  Necessity 1 is a hard
/// constraint, necessity 0 a vacuous one.
class ValuedConstraint {
public:
    ValuedConstraint(std::string id, Constraint constraint, Degree necessity);

    const std::string& id() const { return id_; }
    const Constraint& constraint() const { return constraint_; }
    Degree necessity() const { return necessity_; }

    auto operator<=>(const ValuedConstraint&) const = default;

private:
    std::string id_;
    Constraint constraint_;
    Degree necessity_;
};

/// An immutable prioritized constraint satisfaction problem: named
/// variables with finite domains plus necessity-valued constraints over
/// them.  Construction validates that scopes refer to declared variables
/// and tuple labels to declared domain values.
class Problem {
public:
    Problem(std::string name,
            std::vector<DomainVariable> variables,
            std::vector<ValuedConstraint> constraints);

    const std::string& name() const { return name_; }
    const std::vector<DomainVariable>& variables() const { return variables_; }
    const std::vector<ValuedConstraint>& constraints() const { return constraints_; }

    const DomainVariable* find_variable(const std::string& name) const;
    const DomainVariable& variable(const std::string& name) const;
    std::optional<std::size_t> variable_index(const std::string& name) const;
    const ValuedConstraint* find_constraint(const std::string& id) const;

    /// Copy of this problem with one constraint appended.
    Problem with_constraint(ValuedConstraint constraint) const;

    /// Number of complete labelings, saturating at 2^64 - 1.
    std::uint64_t labeling_count() const;

    auto operator<=>(const Problem&) const = default;

private:
    std::string name_;
    std::vector<DomainVariable> variables_;
    std::vector<ValuedConstraint> constraints_;
    std::map<std::string, std::size_t> index_;
};

/// Whether `labeling` assigns every variable in the constraint's scope.
bool covers_scope(const Labeling& labeling, const Constraint& constraint);

/// l satisfies k: the labeling covers the scope and its restriction to the
/// scope is an accepted tuple.  A labeling that leaves scope variables
/// unassigned satisfies neither k nor its negation.
bool satisfies(const Labeling& labeling, const Constraint& constraint);

/// l satisfies "not k": the labeling covers the scope and its restriction
/// is rejected.
bool violates(const Labeling& labeling, const Constraint& constraint);

/// The complement relation over the same scope.
Constraint negate(const Constraint& constraint);

/// Conjunction of two relations, expressed extensionally over the union of
/// the scopes (left operand's variables first, then the right operand's new
/// ones).  `universe` supplies the domains.
Constraint conjoin(const Constraint& a, const Constraint& b,
                   std::span<const DomainVariable> universe);

/// Disjunction of two relations over the union of the scopes.
Constraint disjoin(const Constraint& a, const Constraint& b,
                   std::span<const DomainVariable> universe);

/// Degree to which a complete labeling satisfies the problem as a whole:
/// 1 minus the highest necessity among the constraints it violates, or 1
/// when it violates none.  Throws unless the labeling assigns exactly the
/// problem's variables to labels from their domains.
Degree pi_star(const Problem& problem, const Labeling& labeling);

/// Same minimum taken over the constraints whose scope the partial
/// labeling already covers.  An upper bound for every completion: deciding
/// more variables can only violate more constraints.
Degree partial_bound(const Problem& problem, const Labeling& labeling);

/// Classical reading: true when the labeling satisfies every constraint
/// whose scope it covers.  Only defined for all-hard problems; throws if
/// any constraint has necessity below 1.
bool classical_consistent(const Problem& problem, const Labeling& labeling);

/// Throws Error unless every assignment names a declared variable and a
/// label from its domain.  With `require_complete`, additionally demands
/// that every variable is assigned.
void check_labeling(const Problem& problem, const Labeling& labeling,
                    bool require_complete);

} // namespace pcsp
