#pragma once

#include <cstdint>
#include <vector>

#include "cosc/constraints.hpp"

namespace cosc {

// Majority-vote clustering error: each predicted cluster is labeled with its
// most frequent ground-truth label (ties pick the smallest label value); the
// error is the misassigned fraction.
double clustering_error(const std::vector<int>& pred, const std::vector<int>& truth);

// Samples `count` distinct unordered pairs uniformly without replacement and
// turns each into a must-link (same truth label) or cannot-link (different)
// with weight 1. Deterministic for a fixed seed.
ConstraintSet generate_constraints(const std::vector<int>& truth, int count,
                                   std::uint64_t seed);

}  // namespace cosc
