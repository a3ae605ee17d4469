// Copyright 2026 The anonaudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ANONAUDIT_DISTANCE_HPP
#define ANONAUDIT_DISTANCE_HPP

#include <span>
#include <vector>

#include "anonaudit/partition.hpp"

namespace anonaudit {

// Aligned probability vectors may carry exact zeros; everything else is in
// (0,1] and sums to 1.
using ProbabilityVector = std::vector<double>;

// H = -sum p_i ln(p_i), in nats. All logarithms in this library are natural;
// every comparison is log-vs-log, so any fixed base would be self-consistent.
double shannon_entropy(std::span<const double> probs);
double shannon_entropy(const Distribution& dist);

// (q - p) / p. Requires p > 0; throws DivisionByZeroDomain otherwise.
double relative_distance(double p, double q);

// Earth mover's distance under the equal metric (all ground distances 1):
// (1/2) * sum |p_i - q_i|, in [0,1].
double emd_equal(std::span<const double> p, std::span<const double> q);

// Earth mover's distance on an ordered domain with ground distance
// |i - j|/(m-1): with r_i = p_i - q_i, (1/(m-1)) * sum_i |sum_{j<=i} r_j|.
// Zero for m = 1; result in [0,1]. Vectors must be aligned over a sorted
// numeric support.
double emd_ordered(std::span<const double> p, std::span<const double> q);

}  // namespace anonaudit

#endif  // ANONAUDIT_DISTANCE_HPP
