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

#ifndef ANONAUDIT_METRICS_HPP
#define ANONAUDIT_METRICS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "anonaudit/distance.hpp"
#include "anonaudit/partition.hpp"
#include "anonaudit/table.hpp"

namespace anonaudit {

// Slack used when testing ln(l) <= H, so that exactly-uniform classes report
// l equal to their distinct-value count despite rounding in H.
inline constexpr double kEntropyBoundaryEps = 1e-9;

struct AlphaK {
  double alpha = 0.0;
  std::int64_t k = 1;
};

struct RecursiveCL {
  std::optional<std::int64_t> c;  // absent when l = 1
  std::int64_t l = 1;
};

// The exact parameters attained by the dataset for each anonymity model
// (the best verifiable bound, not a pass/fail). k and l are always >= 1.
// t and delta are strict: the dataset verifies those models for any
// threshold strictly greater than the returned value.

std::int64_t k_anonymity(const Dataset& data,
                         std::span<const std::string> qi);

AlphaK alpha_k_anonymity(const Dataset& data, std::span<const std::string> qi,
                         std::span<const std::string> sa,
                         SaMode mode = SaMode::Generalization);

std::int64_t l_diversity(const Dataset& data, std::span<const std::string> qi,
                         std::span<const std::string> sa,
                         SaMode mode = SaMode::Generalization);

std::int64_t entropy_l_diversity(const Dataset& data,
                                 std::span<const std::string> qi,
                                 std::span<const std::string> sa,
                                 SaMode mode = SaMode::Generalization);

RecursiveCL recursive_c_l_diversity(const Dataset& data,
                                    std::span<const std::string> qi,
                                    std::span<const std::string> sa,
                                    SaMode mode = SaMode::Generalization);

double basic_beta_likeness(const Dataset& data,
                           std::span<const std::string> qi,
                           std::span<const std::string> sa,
                           SaMode mode = SaMode::Generalization);

// Same max relative distance as basic_beta_likeness; pairs whose distance
// exceeds the -ln(p) cap (so no finite beta satisfies the enhanced
// definition) are appended to *cap_violations when given.
double enhanced_beta_likeness(const Dataset& data,
                              std::span<const std::string> qi,
                              std::span<const std::string> sa,
                              SaMode mode = SaMode::Generalization,
                              std::vector<std::string>* cap_violations = nullptr);

double t_closeness(const Dataset& data, std::span<const std::string> qi,
                   std::span<const std::string> sa,
                   SaMode mode = SaMode::Generalization);

double delta_disclosure(const Dataset& data, std::span<const std::string> qi,
                        std::span<const std::string> sa,
                        SaMode mode = SaMode::Generalization);

// Grouping set for one SA: qi under Generalization, qi + (sa minus s) under
// QiUpdate, declaration order preserved. Throws UnknownSa.
std::vector<std::string> grouping_columns_for(const AttributeSchema& schema,
                                              std::string_view sa);

namespace metric_detail {

// One sensitive attribute analyzed under one grouping set: the partition,
// the whole-table SA distribution, and per-class SA distributions.
struct SaView {
  std::string sa;
  ColumnKind sa_kind = ColumnKind::Categorical;
  const Partition* partition = nullptr;
  Distribution global;
  std::vector<Distribution> class_dists;  // parallel to partition->classes
};

SaView make_sa_view(const Dataset& data, const Partition& partition,
                    std::string_view sa);

std::int64_t min_class_size(const Partition& partition);
double alpha_max(const SaView& view);
std::int64_t distinct_min(const SaView& view);
double entropy_min(const SaView& view);
// Largest l >= 1 with ln(l) <= min_entropy + kEntropyBoundaryEps.
std::int64_t entropy_l_from(double min_entropy);
bool entropy_at_boundary(double min_entropy, std::int64_t l);
// Smallest integer c making r1 < c * (r_l + ... + r_n) hold in every class,
// given the already-aggregated l >= 2.
std::int64_t recursive_c(const SaView& view, std::int64_t l);
double beta_max(const SaView& view);
void beta_cap_violations(const SaView& view, std::vector<std::string>& out);
double t_max(const SaView& view);
double delta_max(const SaView& view, std::uint64_t& skipped_pairs);

std::string format_class_key(const Partition& partition,
                             const EquivalenceClass& cls);

}  // namespace metric_detail

}  // namespace anonaudit

#endif  // ANONAUDIT_METRICS_HPP
