#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "pcsp/core.hpp"

/// Reference semantics by exhaustive enumeration.  Everything here is
/// deliberately brute force: the functions in this namespace are the ground
/// truth the solver and the propagator are tested against, so they stay on
/// the public pi_star path and never share the solver's internals.
namespace pcsp::oracle {

/// Ceiling on the number of complete labelings the oracle will touch.
inline constexpr std::uint64_t default_budget = 10'000'000;

/// The consistency degree together with every complete labeling attaining
/// it, in lexicographic order of (declared variable order, domain order).
struct BestSet {
    Degree consistency;
    std::vector<Labeling> labelings;
};

/// An explicit possibility distribution: one value per complete labeling.
struct DistributionTable {
    std::map<Labeling, Degree> entries;
};

/// Calls fn with every complete labeling, in lexicographic order.
void for_each_complete_labeling(const Problem& problem,
                                const std::function<void(const Labeling&)>& fn);

/// Generate and test: the maximum pi_star over all complete labelings and
/// the set of labelings attaining it.  Throws when the labeling count
/// exceeds the budget.
BestSet enumerate_best(const Problem& problem, std::uint64_t budget = default_budget);

/// Highest possibility of any labeling in the table satisfying k
/// (0 when none does).
Degree possibility_measure(const DistributionTable& table, const Constraint& k);

/// Degree to which k's satisfaction is entailed by the distribution:
/// min of 1 - value over labelings satisfying "not k" (1 when none does).
Degree necessity_measure(const DistributionTable& table, const Constraint& k);

/// 1 minus the largest value in the table.
Degree sub_normalization(const DistributionTable& table);

/// Whether the distribution meets every valued constraint: the necessity
/// measure of each constraint reaches its required degree.  The table must
/// cover exactly the problem's complete labelings.
bool distribution_satisfies(const DistributionTable& table, const Problem& problem);

/// The pointwise-greatest satisfying distribution, tabulated.
DistributionTable pi_star_table(const Problem& problem,
                                std::uint64_t budget = default_budget);

} // namespace pcsp::oracle
