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

#include "anonaudit/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"

namespace anonaudit {

using ordered_json = nlohmann::ordered_json;
using metric_detail::SaView;

std::string_view metric_key(Metric m) {
  switch (m) {
    case Metric::KAnonymity: return "k_anonymity";
    case Metric::AlphaKAnonymity: return "alpha_k_anonymity";
    case Metric::LDiversity: return "l_diversity";
    case Metric::EntropyLDiversity: return "entropy_l_diversity";
    case Metric::RecursiveCLDiversity: return "recursive_c_l_diversity";
    case Metric::BasicBetaLikeness: return "basic_beta_likeness";
    case Metric::EnhancedBetaLikeness: return "enhanced_beta_likeness";
    case Metric::TCloseness: return "t_closeness";
    case Metric::DeltaDisclosure: return "delta_disclosure";
  }
  return "";
}

std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::KAnonymity: return "k-anonymity";
    case Metric::AlphaKAnonymity: return "(alpha,k)-anonymity";
    case Metric::LDiversity: return "l-diversity";
    case Metric::EntropyLDiversity: return "entropy l-diversity";
    case Metric::RecursiveCLDiversity: return "recursive (c,l)-diversity";
    case Metric::BasicBetaLikeness: return "basic beta-likeness";
    case Metric::EnhancedBetaLikeness: return "enhanced beta-likeness";
    case Metric::TCloseness: return "t-closeness";
    case Metric::DeltaDisclosure: return "delta-disclosure privacy";
  }
  return "";
}

bool metric_is_strict(Metric m) {
  return m == Metric::TCloseness || m == Metric::DeltaDisclosure;
}

bool metric_smaller_is_better(Metric m) {
  switch (m) {
    case Metric::KAnonymity:
    case Metric::LDiversity:
    case Metric::EntropyLDiversity:
    case Metric::RecursiveCLDiversity:
      return false;
    default:
      return true;
  }
}

bool threshold_met(Metric m, double attained, double required) {
  if (metric_is_strict(m)) {
    return attained < required;
  }
  if (metric_smaller_is_better(m)) {
    return attained <= required;
  }
  return attained >= required;
}

std::string display_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  std::string s(buf);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return s;
}

const MetricValue& AnonymityReport::metric(Metric m) const {
  for (const auto& mv : metrics) {
    if (mv.id == m) return mv;
  }
  throw Error(Errc::UnknownColumn, "metric missing from report");
}

double AnonymityReport::metric_scalar(Metric m) const {
  const MetricValue& mv = metric(m);
  for (const auto& f : mv.fields) {
    if (!f.absent) return f.value;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

namespace {

MetricValue::Field int_field(std::string name, std::int64_t v) {
  return {std::move(name), true, false, static_cast<double>(v)};
}

MetricValue::Field real_field(std::string name, double v) {
  return {std::move(name), false, false, v};
}

MetricValue::Field absent_field(std::string name) {
  return {std::move(name), true, true, 0.0};
}

}  // namespace

AnonymityReport build_report(const Dataset& data,
                             const AttributeSchema& schema) {
  validate_schema(data, schema);

  AnonymityReport report;
  report.source = data.source();
  report.rows = data.row_count();
  report.columns = data.column_count();
  report.qi = schema.qi;
  report.sa = schema.sa;
  report.mode = schema.mode;

  // One partition per distinct grouping set, shared by all nine metrics.
  std::map<std::vector<std::string>, Partition> cache;
  std::vector<SaView> views;
  views.reserve(schema.sa.size());
  for (const auto& sa : schema.sa) {
    auto grouping = grouping_columns_for(schema, sa);
    auto key = grouping;
    std::sort(key.begin(), key.end());
    auto it = cache.find(key);
    if (it == cache.end()) {
      it = cache.emplace(std::move(key), partition_by(data, grouping)).first;
    }
    views.push_back(metric_detail::make_sa_view(data, it->second, sa));
  }

  // Per-SA values; c is filled in after the across-SA l is known.
  std::vector<double> entropy_mins;
  std::vector<std::uint64_t> delta_skips;
  for (const auto& view : views) {
    SaBreakdown row;
    row.sa = view.sa;
    row.k = metric_detail::min_class_size(*view.partition);
    row.alpha = metric_detail::alpha_max(view);
    row.l = metric_detail::distinct_min(view);
    const double h = metric_detail::entropy_min(view);
    entropy_mins.push_back(h);
    row.entropy_l = metric_detail::entropy_l_from(h);
    row.basic_beta = metric_detail::beta_max(view);
    row.enhanced_beta = row.basic_beta;
    row.t = metric_detail::t_max(view);
    std::uint64_t skipped = 0;
    row.delta = metric_detail::delta_max(view, skipped);
    delta_skips.push_back(skipped);
    report.per_sa.push_back(std::move(row));
  }

  std::int64_t k = std::numeric_limits<std::int64_t>::max();
  double alpha = 0.0;
  std::int64_t l = std::numeric_limits<std::int64_t>::max();
  std::int64_t entropy_l = std::numeric_limits<std::int64_t>::max();
  double basic_beta = 0.0;
  double t = 0.0;
  double delta = 0.0;
  for (const auto& row : report.per_sa) {
    k = std::min(k, row.k);
    alpha = std::max(alpha, row.alpha);
    l = std::min(l, row.l);
    entropy_l = std::min(entropy_l, row.entropy_l);
    basic_beta = std::max(basic_beta, row.basic_beta);
    t = std::max(t, row.t);
    delta = std::max(delta, row.delta);
  }

  std::optional<std::int64_t> c;
  if (l >= 2) {
    std::int64_t cv = 0;
    for (std::size_t i = 0; i < views.size(); ++i) {
      const std::int64_t ci = metric_detail::recursive_c(views[i], l);
      report.per_sa[i].c = ci;
      cv = std::max(cv, ci);
    }
    c = cv;
  }

  MetricValue m_k{Metric::KAnonymity, {int_field("k", k)}, false, {}};
  MetricValue m_ak{Metric::AlphaKAnonymity,
                   {real_field("alpha", alpha), int_field("k", k)},
                   false,
                   {}};
  MetricValue m_l{Metric::LDiversity, {int_field("l", l)}, false, {}};

  MetricValue m_el{Metric::EntropyLDiversity,
                   {int_field("l", entropy_l)},
                   false,
                   {}};
  for (std::size_t i = 0; i < views.size(); ++i) {
    if (metric_detail::entropy_at_boundary(entropy_mins[i],
                                           report.per_sa[i].entropy_l)) {
      m_el.warnings.push_back(
          "sa '" + views[i].sa + "': minimum class entropy equals ln(" +
          std::to_string(report.per_sa[i].entropy_l) +
          "); floor convention reports l = " +
          std::to_string(report.per_sa[i].entropy_l));
    }
  }

  MetricValue m_cl{Metric::RecursiveCLDiversity, {}, false, {}};
  if (c.has_value()) {
    m_cl.fields = {int_field("c", *c), int_field("l", l)};
  } else {
    m_cl.fields = {absent_field("c"), int_field("l", l)};
    m_cl.warnings.push_back("c not computed (l = 1)");
  }

  MetricValue m_bb{Metric::BasicBetaLikeness,
                   {real_field("beta", basic_beta)},
                   false,
                   {}};
  MetricValue m_eb{Metric::EnhancedBetaLikeness,
                   {real_field("beta", basic_beta)},
                   false,
                   {}};
  for (const auto& view : views) {
    metric_detail::beta_cap_violations(view, m_eb.warnings);
  }

  MetricValue m_t{Metric::TCloseness, {real_field("t", t)}, true, {}};

  MetricValue m_d{Metric::DeltaDisclosure,
                  {real_field("delta", delta)},
                  true,
                  {}};
  for (std::size_t i = 0; i < views.size(); ++i) {
    const std::uint64_t skipped = delta_skips[i];
    if (skipped > 0) {
      m_d.warnings.push_back(
          "sa '" + views[i].sa + "': skipped " + std::to_string(skipped) +
          " (class, value) pair" + (skipped == 1 ? "" : "s") +
          " with zero in-class frequency (log ratio undefined)");
    }
  }

  report.metrics = {m_k, m_ak, m_l, m_el, m_cl, m_bb, m_eb, m_t, m_d};
  for (const auto& mv : report.metrics) {
    for (const auto& w : mv.warnings) {
      report.warnings.push_back(std::string(metric_name(mv.id)) + ": " + w);
    }
  }
  return report;
}

namespace {

ordered_json field_value(const MetricValue::Field& f) {
  if (f.absent) {
    return nullptr;
  }
  if (f.integral) {
    return static_cast<std::int64_t>(f.value);
  }
  return f.value;
}

ordered_json field_display(const MetricValue::Field& f) {
  if (f.absent) {
    return nullptr;
  }
  if (f.integral) {
    return std::to_string(static_cast<std::int64_t>(f.value));
  }
  return display_number(f.value);
}

ordered_json opt_int(const std::optional<std::int64_t>& v) {
  if (v.has_value()) {
    return *v;
  }
  return nullptr;
}

}  // namespace

std::string render_json(const AnonymityReport& report) {
  ordered_json j;
  j["schema_version"] = std::string(kReportSchemaVersion);
  j["generator"] = {{"name", std::string(kToolName)},
                    {"version", report.version}};
  j["log_base"] = "natural";
  j["dataset"] = {{"source", report.source},
                  {"rows", report.rows},
                  {"columns", report.columns}};
  j["attributes"] = {{"qi", report.qi},
                     {"sa", report.sa},
                     {"mode", sa_mode_name(report.mode)}};

  ordered_json metrics = ordered_json::object();
  ordered_json display = ordered_json::object();
  ordered_json strict = ordered_json::array();
  for (const auto& mv : report.metrics) {
    const std::string key{metric_key(mv.id)};
    if (mv.fields.size() == 1) {
      metrics[key] = field_value(mv.fields[0]);
      display[key] = field_display(mv.fields[0]);
    } else {
      ordered_json obj = ordered_json::object();
      ordered_json dobj = ordered_json::object();
      for (const auto& f : mv.fields) {
        obj[f.name] = field_value(f);
        dobj[f.name] = field_display(f);
      }
      metrics[key] = std::move(obj);
      display[key] = std::move(dobj);
    }
    if (mv.strict) {
      strict.push_back(key);
    }
  }
  j["metrics"] = std::move(metrics);
  j["display"] = std::move(display);
  j["strict_metrics"] = std::move(strict);

  ordered_json per_sa = ordered_json::array();
  for (const auto& row : report.per_sa) {
    ordered_json r;
    r["sa"] = row.sa;
    r["k"] = row.k;
    r["alpha"] = row.alpha;
    r["l"] = row.l;
    r["entropy_l"] = row.entropy_l;
    r["c"] = opt_int(row.c);
    r["basic_beta"] = row.basic_beta;
    r["enhanced_beta"] = row.enhanced_beta;
    r["t"] = row.t;
    r["delta"] = row.delta;
    per_sa.push_back(std::move(r));
  }
  j["per_sa"] = std::move(per_sa);
  j["warnings"] = report.warnings;

  return j.dump(2) + "\n";
}

namespace {

std::string field_text(const MetricValue::Field& f) {
  if (f.integral) {
    return std::to_string(static_cast<std::int64_t>(f.value));
  }
  return display_number(f.value);
}

std::string metric_line(const MetricValue& mv) {
  std::string line{metric_name(mv.id)};
  line += ": ";
  if (mv.id == Metric::RecursiveCLDiversity && mv.fields[0].absent) {
    line += "l = " + field_text(mv.fields[1]) + ", c not computed (l = " +
            field_text(mv.fields[1]) + ")";
    return line;
  }
  for (std::size_t i = 0; i < mv.fields.size(); ++i) {
    if (i) line += ", ";
    line += mv.fields[i].name + " = " + field_text(mv.fields[i]);
  }
  if (mv.strict) {
    line += " (strict)";
  }
  return line;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string render_text(const AnonymityReport& report) {
  std::ostringstream out;
  out << "anonymity report (" << kToolName << " " << report.version << ")\n";
  out << "source: " << report.source << " (" << report.rows << " rows, "
      << report.columns << " columns)\n";
  out << "quasi-identifiers: " << join(report.qi) << "\n";
  out << "sensitive attributes: " << join(report.sa) << "\n";
  out << "mode: " << sa_mode_name(report.mode) << "\n";
  out << "log base: natural\n";
  out << "\n";
  for (const auto& mv : report.metrics) {
    out << metric_line(mv) << "\n";
  }
  out << "\n";
  out << "(strict): verified for any value strictly greater than the one "
         "reported\n";
  if (report.per_sa.size() > 1) {
    out << "\nper sensitive attribute:\n";
    for (const auto& row : report.per_sa) {
      out << "  " << row.sa << ": k = " << row.k
          << ", alpha = " << display_number(row.alpha) << ", l = " << row.l
          << ", entropy l = " << row.entropy_l << ", c = "
          << (row.c.has_value() ? std::to_string(*row.c) : std::string("-"))
          << ", beta = " << display_number(row.basic_beta)
          << ", t = " << display_number(row.t)
          << ", delta = " << display_number(row.delta) << "\n";
    }
  }
  out << "\n";
  if (report.warnings.empty()) {
    out << "warnings: none\n";
  } else {
    out << "warnings:\n";
    for (const auto& w : report.warnings) {
      out << "  - " << w << "\n";
    }
  }
  return out.str();
}

}  // namespace anonaudit
