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

#include "anonaudit/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>

#include "CLI11.hpp"

#include "anonaudit/report.hpp"

namespace anonaudit {

namespace {

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::UnknownColumn:
    case Errc::OverlappingQiSa:
    case Errc::EmptyQi:
    case Errc::EmptySa:
    case Errc::DuplicateColumn:
    case Errc::UnknownSa:
    case Errc::InvalidKindOverride:
      return kExitSchema;
    default:
      return kExitInput;
  }
}

std::string trim_spaces(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
  return s.substr(b, e - b);
}

// Splits "a,b" into names; double quotes protect commas ('a,"b,c"' yields
// [a] and [b,c]). Each --qi/--sa occurrence is split independently.
bool split_names(const std::vector<std::string>& raw,
                 std::vector<std::string>& out, std::string& error) {
  for (const auto& arg : raw) {
    std::string cur;
    bool quoted = false;
    auto flush = [&]() {
      cur = trim_spaces(cur);
      if (cur.empty()) {
        error = "empty column name in list '" + arg + "'";
        return false;
      }
      out.push_back(cur);
      cur.clear();
      return true;
    };
    for (char ch : arg) {
      if (ch == '"') {
        quoted = !quoted;
      } else if (ch == ',' && !quoted) {
        if (!flush()) return false;
      } else {
        cur.push_back(ch);
      }
    }
    if (!flush()) return false;
  }
  return true;
}

bool resolve_delimiter(const std::string& flag, const std::string& input,
                       char& out, std::string& error) {
  if (flag.empty()) {
    std::string ext = std::filesystem::path(input).extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    out = (ext == ".txt" || ext == ".tsv") ? '\t' : ',';
    return true;
  }
  if (flag == "\\t" || flag == "tab") {
    out = '\t';
    return true;
  }
  if (flag.size() == 1 && flag[0] != '"' && flag[0] != '\n' &&
      flag[0] != '\r') {
    out = flag[0];
    return true;
  }
  error = "delimiter must be a single character (not a quote or newline), "
          "'\\t', or 'tab'";
  return false;
}

bool parse_kind_overrides(const std::vector<std::string>& raw,
                          std::map<std::string, ColumnKind>& out,
                          std::string& error) {
  for (const auto& arg : raw) {
    const std::size_t eq = arg.rfind('=');
    if (eq == std::string::npos || eq == 0) {
      error = "--kind expects <column>=<numeric|categorical>, got '" + arg +
              "'";
      return false;
    }
    const std::string column = arg.substr(0, eq);
    const std::string kind = arg.substr(eq + 1);
    if (kind == "numeric") {
      out[column] = ColumnKind::Numeric;
    } else if (kind == "categorical") {
      out[column] = ColumnKind::Categorical;
    } else {
      error = "--kind value must be 'numeric' or 'categorical', got '" + kind +
              "'";
      return false;
    }
  }
  return true;
}

SaMode mode_of(const std::string& name) {
  return (name == "qi-update" || name == "qiupdate") ? SaMode::QiUpdate
                                                     : SaMode::Generalization;
}

struct CommonArgs {
  std::string input;
  std::vector<std::string> qi_raw;
  std::vector<std::string> sa_raw;
  std::string mode = "generalize";
  std::string delimiter;
  std::string missing = "?";
  std::vector<std::string> kinds;
};

void add_common(CLI::App* cmd, CommonArgs& o) {
  cmd->add_option("--input", o.input, "delimited input file (.csv/.txt/.tsv)")
      ->required();
  cmd->add_option("--qi", o.qi_raw,
                  "quasi-identifier columns, comma-separated (repeatable; "
                  "quote names containing commas)")
      ->required();
  cmd->add_option("--sa", o.sa_raw,
                  "sensitive-attribute columns, comma-separated (repeatable)");
  cmd->add_option("--mode", o.mode,
                  "multi-SA strategy: generalize | qi-update")
      ->check(CLI::IsMember(
          {"generalize", "generalization", "qi-update", "qiupdate"}));
  cmd->add_option("--delimiter", o.delimiter,
                  "field delimiter: single character, '\\t' or 'tab' "
                  "(default: inferred from extension)");
  cmd->add_option("--missing-token", o.missing,
                  "token treated as a missing value (default '?')")
      ->envname("ANONAUDIT_MISSING_TOKEN");
  cmd->add_option("--kind", o.kinds,
                  "per-column kind override, <column>=<numeric|categorical> "
                  "(repeatable)");
}

struct ResolvedConfig {
  LoadOptions load;
  std::vector<std::string> qi;
  std::vector<std::string> sa;
  SaMode mode = SaMode::Generalization;
};

bool resolve_common(const CommonArgs& o, ResolvedConfig& cfg,
                    std::string& error) {
  if (!split_names(o.qi_raw, cfg.qi, error)) return false;
  if (!split_names(o.sa_raw, cfg.sa, error)) return false;
  if (!resolve_delimiter(o.delimiter, o.input, cfg.load.delimiter, error)) {
    return false;
  }
  cfg.load.missing_token = o.missing;
  if (!parse_kind_overrides(o.kinds, cfg.load.kind_overrides, error)) {
    return false;
  }
  cfg.mode = mode_of(o.mode);
  return true;
}

struct ThresholdArgs {
  std::optional<std::int64_t> k;
  std::optional<double> alpha;
  std::optional<std::int64_t> l;
  std::optional<std::int64_t> entropy_l;
  std::optional<double> beta;
  std::optional<double> enhanced_beta;
  std::optional<double> t;
  std::optional<double> delta;

  bool any() const {
    return k || alpha || l || entropy_l || beta || enhanced_beta || t || delta;
  }
  bool any_sa_dependent() const {
    return alpha || l || entropy_l || beta || enhanced_beta || t || delta;
  }
};

int do_report(const CommonArgs& o, const std::string& format,
              const std::string& output, std::ostream& out,
              std::ostream& err) {
  ResolvedConfig cfg;
  std::string error;
  if (!resolve_common(o, cfg, error)) {
    err << "error: " << error << "\n";
    return kExitUsage;
  }
  if (cfg.sa.empty()) {
    err << "error: report requires --sa\n";
    return kExitUsage;
  }
  try {
    Dataset data = load_delimited(o.input, cfg.load);
    AttributeSchema schema{cfg.qi, cfg.sa, cfg.mode};
    AnonymityReport report = build_report(data, schema);
    const std::string rendered =
        format == "json" ? render_json(report) : render_text(report);
    if (output.empty()) {
      out << rendered;
    } else {
      std::ofstream f(output, std::ios::binary);
      if (!f) {
        err << "error: cannot write '" << output << "'\n";
        return kExitInput;
      }
      f << rendered;
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

struct CheckLine {
  Metric metric;
  std::string required;
  std::string attained;
  bool pass = false;
};

int do_check(const CommonArgs& o, const ThresholdArgs& th, std::ostream& out,
             std::ostream& err) {
  if (!th.any()) {
    err << "error: check requires at least one --check-* threshold\n";
    return kExitUsage;
  }
  ResolvedConfig cfg;
  std::string error;
  if (!resolve_common(o, cfg, error)) {
    err << "error: " << error << "\n";
    return kExitUsage;
  }
  if (cfg.sa.empty() && th.any_sa_dependent()) {
    err << "error: the requested thresholds need --sa\n";
    return kExitUsage;
  }
  try {
    Dataset data = load_delimited(o.input, cfg.load);
    std::vector<CheckLine> lines;
    auto add_int = [&](Metric m, std::int64_t required, std::int64_t attained) {
      lines.push_back({m, std::to_string(required), std::to_string(attained),
                       threshold_met(m, static_cast<double>(attained),
                                     static_cast<double>(required))});
    };
    auto add_real = [&](Metric m, double required, double attained) {
      lines.push_back({m, display_number(required), display_number(attained),
                       threshold_met(m, attained, required)});
    };

    // Only the requested metrics are computed.
    if (th.k) {
      add_int(Metric::KAnonymity, *th.k, k_anonymity(data, cfg.qi));
    }
    if (th.alpha) {
      add_real(Metric::AlphaKAnonymity, *th.alpha,
               alpha_k_anonymity(data, cfg.qi, cfg.sa, cfg.mode).alpha);
    }
    if (th.l) {
      add_int(Metric::LDiversity, *th.l,
              l_diversity(data, cfg.qi, cfg.sa, cfg.mode));
    }
    if (th.entropy_l) {
      add_int(Metric::EntropyLDiversity, *th.entropy_l,
              entropy_l_diversity(data, cfg.qi, cfg.sa, cfg.mode));
    }
    if (th.beta) {
      add_real(Metric::BasicBetaLikeness, *th.beta,
               basic_beta_likeness(data, cfg.qi, cfg.sa, cfg.mode));
    }
    if (th.enhanced_beta) {
      add_real(Metric::EnhancedBetaLikeness, *th.enhanced_beta,
               enhanced_beta_likeness(data, cfg.qi, cfg.sa, cfg.mode));
    }
    if (th.t) {
      add_real(Metric::TCloseness, *th.t,
               t_closeness(data, cfg.qi, cfg.sa, cfg.mode));
    }
    if (th.delta) {
      add_real(Metric::DeltaDisclosure, *th.delta,
               delta_disclosure(data, cfg.qi, cfg.sa, cfg.mode));
    }

    bool all_met = true;
    for (const auto& line : lines) {
      out << metric_name(line.metric) << ": required " << line.required
          << ", attained " << line.attained << ": "
          << (line.pass ? "PASS" : "FAIL");
      if (metric_is_strict(line.metric)) {
        out << " (strict)";
      }
      out << "\n";
      all_met = all_met && line.pass;
    }
    return all_met ? kExitOk : kExitCheckFailed;
  } catch (const Error& e) {
    err << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"anonymity audit for tabular microdata"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  CommonArgs rep_args;
  std::string format = "text";
  std::string output;
  CLI::App* rep = app.add_subcommand(
      "report", "compute all nine anonymity models and render a report");
  add_common(rep, rep_args);
  rep->add_option("--format", format, "output format: json | text")
      ->check(CLI::IsMember({"json", "text"}));
  rep->add_option("--output", output,
                  "write the report to this file instead of standard output");

  CommonArgs chk_args;
  ThresholdArgs th;
  CLI::App* chk = app.add_subcommand(
      "check",
      "verify thresholds; non-strict for k/alpha/l/beta, strict for t/delta");
  add_common(chk, chk_args);
  chk->add_option("--check-k", th.k, "minimum k for k-anonymity");
  chk->add_option("--check-alpha", th.alpha,
                  "maximum alpha for (alpha,k)-anonymity");
  chk->add_option("--check-l", th.l, "minimum l for l-diversity");
  chk->add_option("--check-entropy-l", th.entropy_l,
                  "minimum l for entropy l-diversity");
  chk->add_option("--check-beta", th.beta,
                  "maximum beta for basic beta-likeness");
  chk->add_option("--check-enhanced-beta", th.enhanced_beta,
                  "maximum beta for enhanced beta-likeness");
  chk->add_option("--check-t", th.t,
                  "t threshold for t-closeness (strict: attained must be "
                  "smaller)");
  chk->add_option("--check-delta", th.delta,
                  "delta threshold for delta-disclosure privacy (strict)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  if (rep->parsed()) {
    return do_report(rep_args, format, output, out, err);
  }
  return do_check(chk_args, th, out, err);
}

}  // namespace anonaudit
