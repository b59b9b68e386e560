#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pmcts/reward_vector.hpp"

namespace pmcts {

// Strict dominance: a is nowhere worse and somewhere strictly better.
bool dominates(const RewardVector& a, const RewardVector& b);

// a is nowhere worse than b (reflexive).
bool weakly_dominates(const RewardVector& a, const RewardVector& b);

// Strictly better in one dimension and strictly worse in another.
bool incomparable(const RewardVector& a, const RewardVector& b);

// a is strictly better than b in at least one dimension.
bool non_dominated_by(const RewardVector& a, const RewardVector& b);

// Indices of the non-dominated members of `points`. Duplicate vectors that
// qualify are all retained, so the result is index-level membership.
// Throws on empty input or mixed dimensions.
std::vector<std::size_t> pareto_front(std::span<const RewardVector> points);

// Confidence radius added to every reward component when ranking children:
// sqrt((4 ln n + ln D) / (2 n_k)).
double pareto_ucb_bias(double total_n, double child_n, std::size_t dims);

} // namespace pmcts
