#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "pcsp/core.hpp"

namespace pcsp::search {

enum class OrderTag { Declared, MaxDegree, MaxCardinality };
enum class ValueOrder { Declared, Bound };

struct SearchOptions {
    /// Explicit variable order; must be a permutation of the problem's
    /// variables.  When absent, `heuristic` picks the order.
    std::optional<std::vector<std::string>> variable_order;
    OrderTag heuristic = OrderTag::Declared;
    ValueOrder value_order = ValueOrder::Declared;
    /// Cutoff floor: subtrees whose bound cannot beat alpha0 are pruned,
    /// so labelings with compatibility <= alpha0 (when positive) go
    /// unreported.
    Degree alpha0 = Degree::zero();
    /// Stop threshold: with beta0 < 1 the search ends at the first leaf
    /// whose value reaches it.
    Degree beta0 = Degree::one();
    /// Collect every best labeling instead of the first one found; prunes
    /// on strict inequality so ties at the running best survive.
    bool all_best = false;
    /// Node budget for anytime operation.
    std::optional<std::uint64_t> node_limit;
    bool forward_check = false;
};

enum class SearchStatus { Optimal, AlphaPruned, BetaStopped, BudgetExhausted };

/// "OPTIMAL", "ALPHA-PRUNED", "BETA-STOPPED" or "BUDGET-EXHAUSTED".
std::string_view to_string(SearchStatus status);

struct SearchResult {
    /// Best compatibility found; equals alpha0 when status is AlphaPruned
    /// (nothing above the floor exists).
    Degree best_value;
    /// Best labelings in discovery order; singleton unless all_best.  May
    /// be empty when nothing beats the alpha0 floor, including the case of
    /// a zero-consistency problem whose branches are all cut before a leaf.
    std::vector<Labeling> best_labelings;
    SearchStatus status = SearchStatus::Optimal;
    /// Assignments tried, including pruned ones.
    std::uint64_t nodes_expanded = 0;
    /// Internal nodes whose subtree was abandoned.
    std::uint64_t cutoffs = 0;
};

enum class TraceAction { Extend, Cutoff, Leaf, Improve };

/// "EXTEND", "CUTOFF", "LEAF" or "IMPROVE".
std::string_view to_string(TraceAction action);

/// One search node: the assignment just tried, the bound after it, and
/// what the solver did with it.  Depth counts assigned variables.
struct TraceEvent {
    int depth;
    std::string variable;
    Label label;
    Degree bound;
    TraceAction action;
};

using TraceSink = std::function<void(const TraceEvent&)>;

/// The constraints that become fully scoped when the (j+1)-th variable of
/// `order` is assigned: scope inside the first j+1 variables but not
/// inside the first j.  Along a full order every constraint lands in
/// exactly one step.  `order` must be a permutation; 0 <= j < |order|.
std::vector<ValuedConstraint> newly_scoped(const Problem& problem,
                                           const std::vector<std::string>& order,
                                           std::size_t j);

/// One step of the incremental bound: min of beta and the complement of
/// each newly violated constraint's necessity.  Every constraint in
/// `fresh` must be fully assigned by `extended`.
Degree extend_bound(Degree beta, const std::vector<ValuedConstraint>& fresh,
                    const Labeling& extended);

/// Variable order for a heuristic tag.  MaxDegree sorts by descending
/// constraint membership count; MaxCardinality greedily picks the variable
/// completing the most constraint scopes next.  Ties keep declaration
/// order.
std::vector<std::string> order_heuristic(const Problem& problem, OrderTag tag);

/// Depth-first branch and bound over complete labelings: maintains the
/// running bound along each branch (exact at the leaves), prunes subtrees
/// that cannot beat the best value found so far, and raises that value at
/// each improving leaf.
SearchResult solve(const Problem& problem, const SearchOptions& options = {},
                   const TraceSink& trace = {});

} // namespace pcsp::search
