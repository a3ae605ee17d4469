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

#include "anonaudit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <map>

namespace anonaudit {

namespace metric_detail {

namespace {

std::string fmt4(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  std::string s(buf);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return s;
}

// Index of a class-support value in the global support. Class rows are a
// subset of all rows, so the value is always present.
std::size_t global_index(const Distribution& global, const Cell& value) {
  auto it = std::lower_bound(global.support.begin(), global.support.end(),
                             value);
  if (it == global.support.end() || *it != value) {
    throw Error(Errc::SupportMismatch,
                "class value '" + cell_text(value) +
                    "' missing from the global support");
  }
  return static_cast<std::size_t>(it - global.support.begin());
}

}  // namespace

SaView make_sa_view(const Dataset& data, const Partition& partition,
                    std::string_view sa) {
  SaView view;
  view.sa = std::string(sa);
  view.sa_kind = data.column(data.column_index(sa)).kind();
  view.partition = &partition;
  view.global = distribution(data, sa);
  view.class_dists.reserve(partition.classes.size());
  for (const auto& ec : partition.classes) {
    view.class_dists.push_back(distribution(data, ec.rows, sa));
  }
  return view;
}

std::int64_t min_class_size(const Partition& partition) {
  std::size_t k = std::numeric_limits<std::size_t>::max();
  for (const auto& ec : partition.classes) {
    k = std::min(k, ec.rows.size());
  }
  return static_cast<std::int64_t>(k);
}

double alpha_max(const SaView& view) {
  double alpha = 0.0;
  for (const auto& dist : view.class_dists) {
    for (double p : dist.probs) {
      alpha = std::max(alpha, p);
    }
  }
  return alpha;
}

std::int64_t distinct_min(const SaView& view) {
  std::size_t l = std::numeric_limits<std::size_t>::max();
  for (const auto& dist : view.class_dists) {
    l = std::min(l, dist.support.size());
  }
  return static_cast<std::int64_t>(l);
}

double entropy_min(const SaView& view) {
  double h = std::numeric_limits<double>::infinity();
  for (const auto& dist : view.class_dists) {
    h = std::min(h, shannon_entropy(dist));
  }
  return h;
}

std::int64_t entropy_l_from(double min_entropy) {
  std::int64_t l = 1;
  while (std::log(static_cast<double>(l + 1)) <=
         min_entropy + kEntropyBoundaryEps) {
    ++l;
  }
  return l;
}

bool entropy_at_boundary(double min_entropy, std::int64_t l) {
  return std::abs(std::log(static_cast<double>(l)) - min_entropy) <=
         kEntropyBoundaryEps;
}

std::int64_t recursive_c(const SaView& view, std::int64_t l) {
  std::int64_t c = 0;
  for (const auto& dist : view.class_dists) {
    // l <= distinct count within every class of this SA when l comes from
    // l_diversity over the same views.
    if (l < 2 || static_cast<std::size_t>(l) > dist.counts.size()) {
      throw Error(Errc::LengthMismatch,
                  "recursive c needs 2 <= l <= distinct count per class");
    }
    std::vector<std::uint64_t> counts(dist.counts.begin(), dist.counts.end());
    std::sort(counts.begin(), counts.end(), std::greater<>());
    std::uint64_t tail = 0;
    for (std::size_t i = static_cast<std::size_t>(l - 1); i < counts.size();
         ++i) {
      tail += counts[i];
    }
    const std::int64_t needed =
        static_cast<std::int64_t>(counts[0] / tail) + 1;
    c = std::max(c, needed);
  }
  return c;
}

double beta_max(const SaView& view) {
  double beta = 0.0;
  for (const auto& dist : view.class_dists) {
    for (std::size_t i = 0; i < dist.support.size(); ++i) {
      const double q = dist.probs[i];
      const double p = view.global.probs[global_index(view.global,
                                                      dist.support[i])];
      if (q > p) {
        beta = std::max(beta, relative_distance(p, q));
      }
    }
  }
  return beta;
}

// Large near-singleton partitions can violate the cap in almost every
// class; the first few pairs are listed verbatim and the rest summarized.
constexpr std::size_t kMaxListedCapViolations = 10;

void beta_cap_violations(const SaView& view, std::vector<std::string>& out) {
  std::uint64_t unlisted = 0;
  std::size_t listed = 0;
  for (std::size_t ci = 0; ci < view.class_dists.size(); ++ci) {
    const auto& dist = view.class_dists[ci];
    for (std::size_t i = 0; i < dist.support.size(); ++i) {
      const double q = dist.probs[i];
      const double p = view.global.probs[global_index(view.global,
                                                      dist.support[i])];
      if (q <= p) {
        continue;
      }
      const double d = relative_distance(p, q);
      const double cap = -std::log(p);
      if (d <= cap) {
        continue;
      }
      if (listed >= kMaxListedCapViolations) {
        ++unlisted;
        continue;
      }
      ++listed;
      out.push_back("sa '" + view.sa + "': class " +
                    format_class_key(*view.partition,
                                     view.partition->classes[ci]) +
                    ", value '" + cell_text(dist.support[i]) +
                    "': distance " + fmt4(d) + " exceeds cap -ln(p) = " +
                    fmt4(cap) + "; no finite beta satisfies the enhanced "
                    "definition for this pair");
    }
  }
  if (unlisted > 0) {
    out.push_back("sa '" + view.sa + "': " + std::to_string(unlisted) +
                  " further cap-violating (class, value) pairs not listed");
  }
}

double t_max(const SaView& view) {
  double t = 0.0;
  if (view.sa_kind == ColumnKind::Numeric) {
    for (const auto& dist : view.class_dists) {
      auto [p, q] = align(view.global, dist);
      t = std::max(t, emd_ordered(p, q));
    }
  } else {
    // Equal-distance EMD is half the L1 distance; values absent from the
    // class contribute their full global probability.
    for (const auto& dist : view.class_dists) {
      double present_l1 = 0.0;
      double present_p = 0.0;
      for (std::size_t i = 0; i < dist.support.size(); ++i) {
        const double p = view.global.probs[global_index(view.global,
                                                        dist.support[i])];
        present_l1 += std::abs(p - dist.probs[i]);
        present_p += p;
      }
      t = std::max(t, 0.5 * (present_l1 + (1.0 - present_p)));
    }
  }
  return t;
}

double delta_max(const SaView& view, std::uint64_t& skipped_pairs) {
  double delta = 0.0;
  for (const auto& dist : view.class_dists) {
    for (std::size_t i = 0; i < dist.support.size(); ++i) {
      const double q = dist.probs[i];
      const double p = view.global.probs[global_index(view.global,
                                                      dist.support[i])];
      delta = std::max(delta, std::abs(std::log(q / p)));
    }
    // Domain values with zero in-class frequency have an undefined log
    // ratio; they disclose absence, not presence, and are skipped.
    skipped_pairs += view.global.support.size() - dist.support.size();
  }
  return delta;
}

std::string format_class_key(const Partition& partition,
                             const EquivalenceClass& cls) {
  std::string out = "(";
  for (std::size_t i = 0; i < cls.key.size(); ++i) {
    if (i) out += ", ";
    out += partition.grouping_columns[i];
    out += "=";
    out += cell_text(cls.key[i]);
  }
  out += ")";
  return out;
}

}  // namespace metric_detail

namespace {

using metric_detail::SaView;

struct ViewSet {
  std::deque<Partition> partitions;
  std::vector<SaView> views;
};

std::vector<std::string> to_names(std::span<const std::string> names) {
  return {names.begin(), names.end()};
}

ViewSet build_views(const Dataset& data, std::span<const std::string> qi,
                    std::span<const std::string> sa, SaMode mode) {
  AttributeSchema schema{to_names(qi), to_names(sa), mode};
  validate_schema(data, schema);
  ViewSet set;
  std::map<std::vector<std::string>, const Partition*> by_grouping;
  for (const auto& s : schema.sa) {
    auto grouping = grouping_columns_for(schema, s);
    auto sorted = grouping;
    std::sort(sorted.begin(), sorted.end());
    auto it = by_grouping.find(sorted);
    if (it == by_grouping.end()) {
      set.partitions.push_back(partition_by(data, grouping));
      it = by_grouping.emplace(std::move(sorted), &set.partitions.back()).first;
    }
    set.views.push_back(metric_detail::make_sa_view(data, *it->second, s));
  }
  return set;
}

}  // namespace

std::vector<std::string> grouping_columns_for(const AttributeSchema& schema,
                                              std::string_view sa) {
  if (std::find(schema.sa.begin(), schema.sa.end(), sa) == schema.sa.end()) {
    throw Error(Errc::UnknownSa,
                "'" + std::string(sa) + "' is not a sensitive attribute");
  }
  std::vector<std::string> grouping = schema.qi;
  if (schema.mode == SaMode::QiUpdate) {
    for (const auto& other : schema.sa) {
      if (other != sa) {
        grouping.push_back(other);
      }
    }
  }
  return grouping;
}

std::int64_t k_anonymity(const Dataset& data,
                         std::span<const std::string> qi) {
  AttributeSchema schema{to_names(qi), {}, SaMode::Generalization};
  validate_schema(data, schema, /*require_sa=*/false);
  return metric_detail::min_class_size(partition_by(data, qi));
}

AlphaK alpha_k_anonymity(const Dataset& data, std::span<const std::string> qi,
                         std::span<const std::string> sa, SaMode mode) {
  auto set = build_views(data, qi, sa, mode);
  AlphaK out{0.0, std::numeric_limits<std::int64_t>::max()};
  for (const auto& view : set.views) {
    out.alpha = std::max(out.alpha, metric_detail::alpha_max(view));
    out.k = std::min(out.k, metric_detail::min_class_size(*view.partition));
  }
  return out;
}

std::int64_t l_diversity(const Dataset& data, std::span<const std::string> qi,
                         std::span<const std::string> sa, SaMode mode) {
  auto set = build_views(data, qi, sa, mode);
  std::int64_t l = std::numeric_limits<std::int64_t>::max();
  for (const auto& view : set.views) {
    l = std::min(l, metric_detail::distinct_min(view));
  }
  return l;
}

std::int64_t entropy_l_diversity(const Dataset& data,
                                 std::span<const std::string> qi,
                                 std::span<const std::string> sa,
                                 SaMode mode) {
  auto set = build_views(data, qi, sa, mode);
  std::int64_t l = std::numeric_limits<std::int64_t>::max();
  for (const auto& view : set.views) {
    l = std::min(l, metric_detail::entropy_l_from(
                        metric_detail::entropy_min(view)));
  }
  return l;
}

RecursiveCL recursive_c_l_diversity(const Dataset& data,
                                    std::span<const std::string> qi,
                                    std::span<const std::string> sa,
                                    SaMode mode) {
  auto set = build_views(data, qi, sa, mode);
  RecursiveCL out;
  out.l = std::numeric_limits<std::int64_t>::max();
  for (const auto& view : set.views) {
    out.l = std::min(out.l, metric_detail::distinct_min(view));
  }
  if (out.l == 1) {
    return out;  // c stays absent
  }
  std::int64_t c = 0;
  for (const auto& view : set.views) {
    c = std::max(c, metric_detail::recursive_c(view, out.l));
  }
  out.c = c;
  return out;
}

double basic_beta_likeness(const Dataset& data,
                           std::span<const std::string> qi,
                           std::span<const std::string> sa, SaMode mode) {
  auto set = build_views(data, qi, sa, mode);
  double beta = 0.0;
  for (const auto& view : set.views) {
    beta = std::max(beta, metric_detail::beta_max(view));
  }
  return beta;
}

double enhanced_beta_likeness(const Dataset& data,
                              std::span<const std::string> qi,
                              std::span<const std::string> sa, SaMode mode,
                              std::vector<std::string>* cap_violations) {
  auto set = build_views(data, qi, sa, mode);
  double beta = 0.0;
  for (const auto& view : set.views) {
    beta = std::max(beta, metric_detail::beta_max(view));
    if (cap_violations != nullptr) {
      metric_detail::beta_cap_violations(view, *cap_violations);
    }
  }
  return beta;
}

double t_closeness(const Dataset& data, std::span<const std::string> qi,
                   std::span<const std::string> sa, SaMode mode) {
  auto set = build_views(data, qi, sa, mode);
  double t = 0.0;
  for (const auto& view : set.views) {
    t = std::max(t, metric_detail::t_max(view));
  }
  return t;
}

double delta_disclosure(const Dataset& data, std::span<const std::string> qi,
                        std::span<const std::string> sa, SaMode mode) {
  auto set = build_views(data, qi, sa, mode);
  double delta = 0.0;
  std::uint64_t skipped = 0;
  for (const auto& view : set.views) {
    delta = std::max(delta, metric_detail::delta_max(view, skipped));
  }
  return delta;
}

}  // namespace anonaudit
