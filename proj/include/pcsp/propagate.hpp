#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pcsp/core.hpp"

namespace pcsp::propagate {

/// A derived unary restriction: taking `label` for `variable` caps the
/// compatibility at 1 - necessity, so the label is forbidden with the
/// given necessity.  Necessity 1 marks a necessarily inconsistent label.
struct UnaryInference {
    std::string variable;
    Label label;
    Degree necessity;
};

/// Outcome of arc-consistency enforcement.
struct AcResult {
    /// The input plus one unary FORBID constraint per inference (ids
    /// "ac:<variable>:<label>"); nothing else changes, and the problem
    /// keeps the same compatibility for every complete labeling.
    Problem closed_problem;
    /// min over variables of the best per-label compatibility after
    /// closure; an upper bound on the problem's consistency degree.
    Degree delta;
    /// Installed inferences in (declared variable, domain) order.
    std::vector<UnaryInference> inferences;
    /// Full passes performed, including the final quiet one.
    int rounds = 0;
    /// False when some variable lost every label (compatibility 0).
    bool arc_consistent = true;
};

/// Best compatibility any labeling of k's scope can reach while assigning
/// `label` to `variable`, judged by k itself plus the problem's current
/// unary constraints on the scope.  k must be non-unary and its scope must
/// contain `variable`.
Degree bound_b(const Problem& problem, const std::string& variable, const Label& label,
               const ValuedConstraint& k);

/// One revision step: every label of `variable` whose bound against k
/// falls below its current unary compatibility yields an inference with
/// necessity 1 - bound.
std::vector<UnaryInference> revise(const Problem& problem, const std::string& variable,
                                   const ValuedConstraint& k);

/// Repeated revision over all (variable, non-unary constraint) pairs until
/// a full pass installs nothing.  Inferences with necessity below `gamma`
/// are discarded (gamma 0 = full closure, gamma 1 = only suppress
/// necessarily inconsistent labels).  Inferences on the same (variable,
/// label) merge by max necessity.
AcResult enforce_ac(const Problem& problem, Degree gamma = Degree::zero());

/// Per-label bounds keyed by variable; labels appear in domain order.
using BoundTable = std::map<std::string, std::vector<std::pair<Label, Degree>>>;

/// Look-ahead used during search: for each unassigned variable and label,
/// the min over constraints fully decided by `partial` plus that one
/// assignment (unary constraints included) of the violated-constraint
/// penalty.  A zero entry marks a dead label.
BoundTable forward_check(const Problem& problem, const Labeling& partial,
                         const std::set<std::string>& unassigned);

} // namespace pcsp::propagate
