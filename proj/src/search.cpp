#include "pcsp/search.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <unordered_set>

namespace pcsp::search {

std::string_view to_string(SearchStatus status) {
    switch (status) {
        case SearchStatus::Optimal: return "OPTIMAL";
        case SearchStatus::AlphaPruned: return "ALPHA-PRUNED";
        case SearchStatus::BetaStopped: return "BETA-STOPPED";
        case SearchStatus::BudgetExhausted: return "BUDGET-EXHAUSTED";
    }
    return "?";
}

std::string_view to_string(TraceAction action) {
    switch (action) {
        case TraceAction::Extend: return "EXTEND";
        case TraceAction::Cutoff: return "CUTOFF";
        case TraceAction::Leaf: return "LEAF";
        case TraceAction::Improve: return "IMPROVE";
    }
    return "?";
}

namespace {

void check_order(const Problem& problem, const std::vector<std::string>& order) {
    if (order.size() != problem.variables().size()) {
        throw Error("variable order must mention every variable exactly once");
    }
    std::set<std::string> seen;
    for (const auto& name : order) {
        if (problem.find_variable(name) == nullptr) {
            throw Error("unknown variable '" + name + "' in order");
        }
        if (!seen.insert(name).second) {
            throw Error("variable order repeats '" + name + "'");
        }
    }
}

} // namespace

std::vector<ValuedConstraint> newly_scoped(const Problem& problem,
                                           const std::vector<std::string>& order,
                                           std::size_t j) {
    check_order(problem, order);
    if (j >= order.size()) throw Error("order index out of range");
    const std::set<std::string> prefix(order.begin(), order.begin() + j + 1);
    std::vector<ValuedConstraint> fresh;
    for (const auto& vc : problem.constraints()) {
        const auto& scope = vc.constraint().scope();
        const bool inside = std::all_of(scope.begin(), scope.end(), [&](const auto& name) {
            return prefix.count(name) != 0;
        });
        const bool mentions_last =
            std::find(scope.begin(), scope.end(), order[j]) != scope.end();
        if (inside && mentions_last) fresh.push_back(vc);
    }
    return fresh;
}

Degree extend_bound(Degree beta, const std::vector<ValuedConstraint>& fresh,
                    const Labeling& extended) {
    for (const auto& vc : fresh) {
        if (!covers_scope(extended, vc.constraint())) {
            throw Error("constraint '" + vc.id() + "' is not fully assigned");
        }
        if (violates(extended, vc.constraint())) {
            beta = min(beta, vc.necessity().complement());
        }
    }
    return beta;
}

std::vector<std::string> order_heuristic(const Problem& problem, OrderTag tag) {
    std::vector<std::string> declared;
    for (const auto& var : problem.variables()) declared.push_back(var.name());

    if (tag == OrderTag::Declared) return declared;

    if (tag == OrderTag::MaxDegree) {
        std::map<std::string, int> degree;
        for (const auto& vc : problem.constraints()) {
            for (const auto& name : vc.constraint().scope()) ++degree[name];
        }
        std::stable_sort(declared.begin(), declared.end(),
                         [&](const auto& a, const auto& b) { return degree[a] > degree[b]; });
        return declared;
    }

    // MaxCardinality: repeatedly take the variable that completes the most
    // constraint scopes given what is already ordered.
    std::vector<std::string> order;
    std::set<std::string> chosen;
    while (order.size() < declared.size()) {
        const std::string* pick = nullptr;
        int pick_count = -1;
        for (const auto& name : declared) {
            if (chosen.count(name) != 0) continue;
            int completed = 0;
            for (const auto& vc : problem.constraints()) {
                const auto& scope = vc.constraint().scope();
                const bool mentions =
                    std::find(scope.begin(), scope.end(), name) != scope.end();
                if (!mentions) continue;
                const bool rest_chosen =
                    std::all_of(scope.begin(), scope.end(), [&](const auto& s) {
                        return s == name || chosen.count(s) != 0;
                    });
                if (rest_chosen) ++completed;
            }
            if (completed > pick_count) {
                pick_count = completed;
                pick = &name;
            }
        }
        order.push_back(*pick);
        chosen.insert(*pick);
    }
    return order;
}

namespace {

struct IndexedConstraint {
    Degree penalty;
    bool forbid = true;
    std::vector<std::size_t> scope_positions;
    std::vector<std::uint64_t> strides;
    std::unordered_set<std::uint64_t> keys;
    std::size_t completing = 0;
};

/// One branch-and-bound run.  Constraints are recompiled into positional
/// tuple tables keyed on the search order, so bound evaluation never goes
/// through the public labeling path (the tests compare the two routes).
class Solver {
public:
    Solver(const Problem& problem, const SearchOptions& options, const TraceSink& trace)
        : options_(options), trace_(trace) {
        if (options.alpha0 > options.beta0) throw Error("alpha0 exceeds beta0");

        std::vector<std::string> order;
        if (options.variable_order) {
            check_order(problem, *options.variable_order);
            order = *options.variable_order;
        } else {
            order = order_heuristic(problem, options.heuristic);
        }
        n_ = order.size();

        std::map<std::string, std::size_t> position;
        for (std::size_t pos = 0; pos < n_; ++pos) {
            vars_.push_back(&problem.variable(order[pos]));
            position.emplace(order[pos], pos);
        }
        std::vector<std::map<Label, std::size_t>> label_index(n_);
        for (std::size_t pos = 0; pos < n_; ++pos) {
            const auto& domain = vars_[pos]->domain();
            for (std::size_t v = 0; v < domain.size(); ++v) {
                label_index[pos].emplace(domain[v], v);
            }
        }

        completing_at_.resize(n_);
        containing_.resize(n_);
        for (const auto& vc : problem.constraints()) {
            const Constraint& k = vc.constraint();
            IndexedConstraint ic;
            ic.penalty = vc.necessity().complement();
            ic.forbid = k.mode() == ConstraintMode::Forbid;
            for (const auto& name : k.scope()) {
                ic.scope_positions.push_back(position.at(name));
            }
            ic.completing =
                *std::max_element(ic.scope_positions.begin(), ic.scope_positions.end());

            ic.strides.assign(k.arity(), 1);
            for (std::size_t m = k.arity(); m-- > 1;) {
                const std::uint64_t radix = vars_[ic.scope_positions[m]]->domain().size();
                const std::uint64_t next = ic.strides[m] * radix;
                if (ic.strides[m] != 0 && next / radix != ic.strides[m]) {
                    throw Error("constraint '" + vc.id() + "' is too large to index");
                }
                ic.strides[m - 1] = next;
            }
            for (const auto& tuple : k.tuples()) {
                std::uint64_t key = 0;
                for (std::size_t m = 0; m < tuple.size(); ++m) {
                    key += label_index[ic.scope_positions[m]].at(tuple[m]) * ic.strides[m];
                }
                ic.keys.insert(key);
            }

            const std::size_t index = constraints_.size();
            completing_at_[ic.completing].push_back(index);
            for (std::size_t pos : ic.scope_positions) containing_[pos].push_back(index);
            constraints_.push_back(std::move(ic));
        }

        current_.assign(n_, 0);
    }

    SearchResult run() {
        alpha_ = options_.alpha0;
        if (n_ == 0) {
            // The empty labeling is the only candidate and violates nothing.
            const Degree value = Degree::one();
            if (!pruned(value) && value > alpha_) {
                alpha_ = value;
                best_.push_back(Labeling());
                has_best_ = true;
                if (options_.beta0 < Degree::one()) beta_stopped_ = true;
            }
        } else {
            descend(0, Degree::one());
        }

        SearchResult result;
        result.best_value = alpha_;
        result.best_labelings = std::move(best_);
        result.nodes_expanded = nodes_;
        result.cutoffs = cutoffs_;
        if (beta_stopped_) {
            result.status = SearchStatus::BetaStopped;
        } else if (exhausted_) {
            result.status = SearchStatus::BudgetExhausted;
        } else if (!has_best_ && options_.alpha0 > Degree::zero()) {
            result.status = SearchStatus::AlphaPruned;
        } else {
            result.status = SearchStatus::Optimal;
        }
        return result;
    }

private:
    bool pruned(Degree bound) const {
        return options_.all_best ? bound < alpha_ : bound <= alpha_;
    }

    bool violated(const IndexedConstraint& ic) const {
        std::uint64_t key = 0;
        for (std::size_t m = 0; m < ic.scope_positions.size(); ++m) {
            key += current_[ic.scope_positions[m]] * ic.strides[m];
        }
        const bool listed = ic.keys.count(key) != 0;
        return ic.forbid ? listed : !listed;
    }

    Degree extend(std::size_t pos, Degree beta) const {
        for (std::size_t index : completing_at_[pos]) {
            const IndexedConstraint& ic = constraints_[index];
            if (violated(ic)) beta = min(beta, ic.penalty);
        }
        return beta;
    }

    /// Bound contributed by the future variables: each one must take some
    /// label, and every label's compatibility with the current prefix is
    /// capped by the constraints it completes.
    Degree forward_bound(std::size_t pos) {
        Degree result = Degree::one();
        for (std::size_t future = pos + 1; future < n_; ++future) {
            Degree best_label = Degree::zero();
            const std::size_t dsize = vars_[future]->domain().size();
            for (std::size_t v = 0; v < dsize; ++v) {
                current_[future] = v;
                Degree b = Degree::one();
                for (std::size_t index : containing_[future]) {
                    const IndexedConstraint& ic = constraints_[index];
                    if (!applicable(ic, pos, future)) continue;
                    if (violated(ic)) b = min(b, ic.penalty);
                }
                best_label = max(best_label, b);
                if (best_label == Degree::one()) break;
            }
            result = min(result, best_label);
            if (result == Degree::zero()) break;
        }
        return result;
    }

    static bool applicable(const IndexedConstraint& ic, std::size_t pos,
                           std::size_t future) {
        for (std::size_t q : ic.scope_positions) {
            if (q > pos && q != future) return false;
        }
        return true;
    }

    void emit(std::size_t pos, std::size_t v, Degree bound, TraceAction action) {
        if (!trace_) return;
        trace_(TraceEvent{static_cast<int>(pos) + 1, vars_[pos]->name(),
                          vars_[pos]->domain()[v], bound, action});
    }

    Labeling current_labeling() const {
        Labeling labeling;
        for (std::size_t pos = 0; pos < n_; ++pos) {
            labeling.assign(vars_[pos]->name(), vars_[pos]->domain()[current_[pos]]);
        }
        return labeling;
    }

    /// Returns false when the whole search must stop.
    bool handle_leaf(std::size_t pos, std::size_t v, Degree value) {
        bool improved = false;
        bool entered = false;
        if (value > alpha_) {
            alpha_ = value;
            best_.clear();
            improved = entered = true;
        } else if (value == alpha_ &&
                   (has_best_ ? options_.all_best
                              : options_.alpha0 == Degree::zero())) {
            // Ties join the set in all-best mode; the very first leaf is
            // kept even without an improvement when the floor is vacuous,
            // so a zero-consistency search still names a witness.
            entered = true;
        }
        if (entered) {
            best_.push_back(current_labeling());
            has_best_ = true;
        }
        emit(pos, v, value, improved ? TraceAction::Improve : TraceAction::Leaf);
        if (options_.beta0 < Degree::one() && value >= options_.beta0) {
            beta_stopped_ = true;
            return false;
        }
        return true;
    }

    /// Returns false when the whole search must stop.
    bool descend(std::size_t pos, Degree beta) {
        const std::size_t dsize = vars_[pos]->domain().size();
        std::vector<std::pair<std::size_t, Degree>> children;
        children.reserve(dsize);
        const bool by_bound = options_.value_order == ValueOrder::Bound;
        for (std::size_t v = 0; v < dsize; ++v) {
            if (by_bound) current_[pos] = v;
            children.emplace_back(v, by_bound ? extend(pos, beta) : Degree::zero());
        }
        if (by_bound) {
            std::stable_sort(children.begin(), children.end(),
                             [](const auto& a, const auto& b) { return b.second < a.second; });
        }

        const bool leaf_level = pos + 1 == n_;
        for (const auto& [v, cached] : children) {
            if (options_.node_limit && nodes_ >= *options_.node_limit) {
                exhausted_ = true;
                return false;
            }
            ++nodes_;
            current_[pos] = v;
            const Degree child = by_bound ? cached : extend(pos, beta);

            if (leaf_level) {
                const bool rescue = !has_best_ && options_.alpha0 == Degree::zero();
                if (pruned(child) && !rescue) {
                    emit(pos, v, child, TraceAction::Leaf);
                } else if (!handle_leaf(pos, v, child)) {
                    return false;
                }
            } else if (pruned(child)) {
                ++cutoffs_;
                emit(pos, v, child, TraceAction::Cutoff);
            } else {
                Degree sub = child;
                if (options_.forward_check) sub = min(sub, forward_bound(pos));
                if (pruned(sub)) {
                    ++cutoffs_;
                    emit(pos, v, sub, TraceAction::Cutoff);
                } else {
                    emit(pos, v, sub, TraceAction::Extend);
                    if (!descend(pos + 1, sub)) return false;
                }
            }

            // Raising alpha may have retired this whole sibling group:
            // every remaining child is bounded by beta.
            if (pruned(beta)) break;
        }
        return true;
    }

    SearchOptions options_;
    const TraceSink& trace_;
    std::size_t n_ = 0;
    std::vector<const DomainVariable*> vars_;
    std::vector<IndexedConstraint> constraints_;
    std::vector<std::vector<std::size_t>> completing_at_;
    std::vector<std::vector<std::size_t>> containing_;
    std::vector<std::size_t> current_;
    Degree alpha_;
    std::vector<Labeling> best_;
    bool has_best_ = false;
    bool beta_stopped_ = false;
    bool exhausted_ = false;
    std::uint64_t nodes_ = 0;
    std::uint64_t cutoffs_ = 0;
};

} // namespace

SearchResult solve(const Problem& problem, const SearchOptions& options,
                   const TraceSink& trace) {
    return Solver(problem, options, trace).run();
}

} // namespace pcsp::search
