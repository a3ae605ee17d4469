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

#include "anonaudit/distance.hpp"

#include <cmath>
#include <cstdlib>

namespace anonaudit {

double shannon_entropy(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) {
      h -= p * std::log(p);
    }
  }
  // Guard against -0.0 from a degenerate distribution.
  return h == 0.0 ? 0.0 : h;
}

double shannon_entropy(const Distribution& dist) {
  return shannon_entropy(dist.probs);
}

double relative_distance(double p, double q) {
  if (p <= 0.0) {
    throw Error(Errc::DivisionByZeroDomain,
                "relative distance requires p > 0");
  }
  return (q - p) / p;
}

double emd_equal(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw Error(Errc::LengthMismatch,
                "emd_equal requires equal-length vectors");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    sum += std::abs(p[i] - q[i]);
  }
  return 0.5 * sum;
}

double emd_ordered(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw Error(Errc::LengthMismatch,
                "emd_ordered requires equal-length vectors");
  }
  const std::size_t m = p.size();
  if (m <= 1) {
    return 0.0;
  }
  double cumulative = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    cumulative += p[i] - q[i];
    sum += std::abs(cumulative);
  }
  return sum / static_cast<double>(m - 1);
}

}  // namespace anonaudit
