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

#ifndef ANONAUDIT_REPORT_HPP
#define ANONAUDIT_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "anonaudit/metrics.hpp"
#include "anonaudit/table.hpp"

namespace anonaudit {

inline constexpr std::string_view kToolName = "anonaudit";
inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::string_view kReportSchemaVersion = "1";

enum class Metric {
  KAnonymity,
  AlphaKAnonymity,
  LDiversity,
  EntropyLDiversity,
  RecursiveCLDiversity,
  BasicBetaLikeness,
  EnhancedBetaLikeness,
  TCloseness,
  DeltaDisclosure,
};

// "k_anonymity" (JSON key) and "k-anonymity" (human name).
std::string_view metric_key(Metric m);
std::string_view metric_name(Metric m);

// Threshold comparison used by the check command: non-strict for k, alpha,
// l, beta (attained-at-least for k/l, attained-at-most for alpha/beta) and
// strict attained < required for t and delta.
bool threshold_met(Metric m, double attained, double required);
bool metric_is_strict(Metric m);
// True when smaller attained values are better (alpha, beta, t, delta).
bool metric_smaller_is_better(Metric m);

struct MetricValue {
  Metric id = Metric::KAnonymity;
  struct Field {
    std::string name;       // "k", "alpha", ...
    bool integral = false;
    bool absent = false;    // recursive c when l = 1
    double value = 0.0;     // exact for integral fields
  };
  std::vector<Field> fields;
  bool strict = false;
  std::vector<std::string> warnings;  // unprefixed
};

// Per-SA values, each computed on that SA's grouping set. c is computed with
// the across-SA aggregated l so that the top-level c is the max of these.
struct SaBreakdown {
  std::string sa;
  std::int64_t k = 1;
  double alpha = 0.0;
  std::int64_t l = 1;
  std::int64_t entropy_l = 1;
  std::optional<std::int64_t> c;
  double basic_beta = 0.0;
  double enhanced_beta = 0.0;
  double t = 0.0;
  double delta = 0.0;
};

struct AnonymityReport {
  std::string source;
  std::uint64_t rows = 0;
  std::uint64_t columns = 0;
  std::vector<std::string> qi;
  std::vector<std::string> sa;
  SaMode mode = SaMode::Generalization;
  std::vector<MetricValue> metrics;    // the nine models, fixed order
  std::vector<SaBreakdown> per_sa;
  std::vector<std::string> warnings;   // aggregated, "<metric name>: ..." form
  std::string version{kToolVersion};

  const MetricValue& metric(Metric m) const;
  double metric_scalar(Metric m) const;  // headline parameter of one model
};

// Runs all nine metrics, sharing one partition per distinct grouping set.
AnonymityReport build_report(const Dataset& data,
                             const AttributeSchema& schema);

// Deterministic JSON: fixed key order, shortest round-trip floats, raw
// values plus 4-decimal "display" strings. Re-rendering the same report is
// byte-identical.
std::string render_json(const AnonymityReport& report);

// Human-readable listing; t and delta carry the strictness marker.
std::string render_text(const AnonymityReport& report);

// 4-decimal display form with trailing zeros trimmed ("0.25", "0.6931", "1").
std::string display_number(double value);

}  // namespace anonaudit

#endif  // ANONAUDIT_REPORT_HPP
