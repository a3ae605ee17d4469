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

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracle.hpp"

using namespace anonaudit;

namespace {

Dataset d4() {
  return Dataset::from_rows({"g", "d"},
                            {{"A", "x"}, {"A", "y"}, {"B", "x"}, {"B", "x"}});
}

Dataset d5() {
  return Dataset::from_rows({"g", "s1", "s2"},
                            {{"A", "x", "u"}, {"A", "y", "u"}, {"A", "x", "v"}});
}

const std::vector<std::string> kQiG{"g"};
const std::vector<std::string> kSaD{"d"};

}  // namespace

TEST_CASE("fixture values for all nine models") {
  const Dataset data = d4();

  CHECK(k_anonymity(data, kQiG) == 2);

  const AlphaK ak = alpha_k_anonymity(data, kQiG, kSaD);
  CHECK(ak.alpha == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ak.k == 2);

  CHECK(l_diversity(data, kQiG, kSaD) == 1);
  CHECK(entropy_l_diversity(data, kQiG, kSaD) == 1);

  const RecursiveCL cl = recursive_c_l_diversity(data, kQiG, kSaD);
  CHECK(!cl.c.has_value());
  CHECK(cl.l == 1);

  CHECK(basic_beta_likeness(data, kQiG, kSaD) ==
        doctest::Approx(1.0).epsilon(1e-12));

  std::vector<std::string> caps;
  CHECK(enhanced_beta_likeness(data, kQiG, kSaD, SaMode::Generalization,
                               &caps) == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(caps.size() == 1);
  // Class B, value x: D = 1/3 > -ln(0.75) ~ 0.2877.
  CHECK(caps[0].find("g=B") != std::string::npos);
  CHECK(caps[0].find("'x'") != std::string::npos);

  CHECK(t_closeness(data, kQiG, kSaD) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(delta_disclosure(data, kQiG, kSaD) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("k-anonymity edges") {
  const Dataset same = Dataset::from_rows({"g"}, {{"A"}, {"A"}, {"A"}});
  CHECK(k_anonymity(same, kQiG) == 3);

  const Dataset distinct = Dataset::from_rows({"g"}, {{"A"}, {"B"}, {"C"}});
  CHECK(k_anonymity(distinct, kQiG) == 1);
}

TEST_CASE("constant SA forces the degenerate parameters") {
  const Dataset data = Dataset::from_rows(
      {"g", "d"}, {{"A", "s"}, {"A", "s"}, {"B", "s"}, {"C", "s"}});
  const AlphaK ak = alpha_k_anonymity(data, kQiG, kSaD);
  CHECK(ak.alpha == 1.0);
  CHECK(l_diversity(data, kQiG, kSaD) == 1);
  CHECK(entropy_l_diversity(data, kQiG, kSaD) == 1);
  CHECK(basic_beta_likeness(data, kQiG, kSaD) == 0.0);
  std::vector<std::string> caps;
  CHECK(enhanced_beta_likeness(data, kQiG, kSaD, SaMode::Generalization,
                               &caps) == 0.0);
  CHECK(caps.empty());
  CHECK(t_closeness(data, kQiG, kSaD) == 0.0);
  CHECK(delta_disclosure(data, kQiG, kSaD) == 0.0);
}

TEST_CASE("uniform classes hit the maximum-diversity identities") {
  // Two classes, each uniform over three SA values.
  const Dataset data = Dataset::from_rows(
      {"g", "d"},
      {{"A", "x"}, {"A", "y"}, {"A", "z"},
       {"B", "x"}, {"B", "y"}, {"B", "z"}});
  CHECK(l_diversity(data, kQiG, kSaD) == 3);
  CHECK(entropy_l_diversity(data, kQiG, kSaD) == 3);
  const AlphaK ak = alpha_k_anonymity(data, kQiG, kSaD);
  CHECK(ak.alpha == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  // Uniform over l values: r1 equals the tail sum, so c = 2.
  const RecursiveCL cl = recursive_c_l_diversity(data, kQiG, kSaD);
  REQUIRE(cl.c.has_value());
  CHECK(*cl.c == 2);
  CHECK(cl.l == 3);
}

TEST_CASE("all-distinct SA values per class give l = min class size") {
  const Dataset data = Dataset::from_rows(
      {"g", "d"},
      {{"A", "1"}, {"A", "2"}, {"A", "3"}, {"B", "4"}, {"B", "5"}});
  CHECK(l_diversity(data, kQiG, kSaD) == 2);
}

TEST_CASE("recursive (c,l) on descending counts 3,2,1 with l = 2") {
  // Class A carries counts (3,2,1); class B has exactly two distinct values,
  // pinning l to 2. Smallest c with r1 < c*(r2+r3) in A is 2.
  const Dataset data = Dataset::from_rows(
      {"g", "d"},
      {{"A", "x"}, {"A", "x"}, {"A", "x"}, {"A", "y"}, {"A", "y"},
       {"A", "z"},
       {"B", "x"}, {"B", "y"}});
  const RecursiveCL cl = recursive_c_l_diversity(data, kQiG, kSaD);
  CHECK(cl.l == 2);
  REQUIRE(cl.c.has_value());
  // A: r1=3, tail r2+r3 = 3 -> c=2. B: r1=1, tail=1 -> c=2.
  CHECK(*cl.c == 2);

  CHECK(oracle::recursive_cl(data, kQiG, kSaD, SaMode::Generalization).c ==
        cl.c);
}

TEST_CASE("recursive per-class helper obeys the strict inequality") {
  std::mt19937 rng(10001);
  for (int iter = 0; iter < 100; ++iter) {
    const auto table = oracle::random_table(rng);
    const std::int64_t l =
        l_diversity(table.data, table.qi, table.sa, SaMode::Generalization);
    if (l < 2) continue;
    const RecursiveCL cl = recursive_c_l_diversity(table.data, table.qi,
                                                   table.sa,
                                                   SaMode::Generalization);
    REQUIRE(cl.c.has_value());
    // c satisfies the inequality in every class of every SA; c-1 fails in
    // at least one.
    bool tight_somewhere = false;
    for (const auto& s : table.sa) {
      for (const auto& cls : oracle::classes(table.data, table.qi)) {
        std::vector<std::int64_t> counts;
        for (const auto& [v, n] : oracle::value_counts(table.data, cls, s)) {
          counts.push_back(n);
        }
        std::sort(counts.begin(), counts.end(), std::greater<>());
        std::int64_t tail = 0;
        for (std::size_t i = static_cast<std::size_t>(cl.l - 1);
             i < counts.size(); ++i) {
          tail += counts[i];
        }
        CHECK(counts.front() < *cl.c * tail);
        if (counts.front() >= (*cl.c - 1) * tail) {
          tight_somewhere = true;
        }
      }
    }
    CHECK(tight_somewhere);
  }
}

TEST_CASE("beta rises when a rare value dominates a class") {
  // Global prob of x is 0.5; class B is all-x, so D = (1-0.5)/0.5 = 1.
  const Dataset data = Dataset::from_rows(
      {"g", "d"}, {{"A", "y"}, {"A", "y"}, {"B", "x"}, {"B", "x"}});
  CHECK(basic_beta_likeness(data, kQiG, kSaD) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // D = 1.0 <= -ln(0.5)? No: -ln(0.5) = 0.693 < 1.0 -> cap violation.
  std::vector<std::string> caps;
  enhanced_beta_likeness(data, kQiG, kSaD, SaMode::Generalization, &caps);
  CHECK(caps.size() == 2);  // both classes are pure
}

TEST_CASE("enhanced cap passes when p is small enough") {
  // Global x = 3/12 = 0.25, y = 0.75. Class A has x at 0.5, so
  // D = 1.0 <= -ln(0.25) = 1.386; class B has y at 7/8, D = 1/6 <= 0.2877.
  std::vector<std::vector<std::string>> rows = {
      {"A", "x"}, {"A", "x"}, {"A", "y"}, {"A", "y"}, {"B", "x"}};
  for (int i = 0; i < 7; ++i) rows.push_back({"B", "y"});
  const Dataset data = Dataset::from_rows({"g", "d"}, std::move(rows));
  std::vector<std::string> caps;
  const double beta = enhanced_beta_likeness(data, kQiG, kSaD,
                                             SaMode::Generalization, &caps);
  CHECK(beta == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(caps.empty());
}

TEST_CASE("cap violations are listed up to a bound, then summarized") {
  // Fifty singleton classes: every pure class violates the -ln(p) cap, so
  // the listing must stop at 10 pairs plus one summary with the remainder.
  std::vector<std::vector<std::string>> rows;
  for (int i = 0; i < 50; ++i) {
    rows.push_back({"u" + std::to_string(i), i == 0 ? "x" : "y"});
  }
  const Dataset data = Dataset::from_rows({"g", "d"}, std::move(rows));
  std::vector<std::string> caps;
  enhanced_beta_likeness(data, kQiG, kSaD, SaMode::Generalization, &caps);
  REQUIRE(caps.size() == 11);
  CHECK(caps.back().find("40 further cap-violating") != std::string::npos);
}

TEST_CASE("t-closeness routes numeric SAs through the ordered distance") {
  const Dataset numeric = Dataset::from_rows(
      {"g", "d"}, {{"A", "1"}, {"B", "2"}, {"C", "3"}});
  REQUIRE(numeric.column(std::string_view("d")).kind() ==
          ColumnKind::Numeric);
  // Classes are singletons; the all-1 class attains the ordered EMD 0.5.
  CHECK(t_closeness(numeric, kQiG, kSaD) ==
        doctest::Approx(0.5).epsilon(1e-12));

  LoadOptions force_cat;
  force_cat.kind_overrides["d"] = ColumnKind::Categorical;
  const Dataset categorical = Dataset::from_rows(
      {"g", "d"}, {{"A", "1"}, {"B", "2"}, {"C", "3"}}, force_cat);
  // Equal distance: each singleton class is at 0.5*(|1-1/3| + 1/3 + 1/3).
  CHECK(t_closeness(categorical, kQiG, kSaD) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("delta-disclosure maximum comes from the largest log ratio") {
  const Dataset data = d4();
  // Class A value y: |ln(0.5/0.25)| = ln 2; class B value x: |ln(1/0.75)|.
  CHECK(delta_disclosure(data, kQiG, kSaD) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(std::abs(std::log(1.0 / 0.75)) < std::log(2.0));
}

TEST_CASE("grouping columns per SA") {
  AttributeSchema schema;
  schema.qi = {"g"};
  schema.sa = {"s1", "s2"};
  schema.mode = SaMode::QiUpdate;
  CHECK(grouping_columns_for(schema, "s1") ==
        std::vector<std::string>{"g", "s2"});
  CHECK(grouping_columns_for(schema, "s2") ==
        std::vector<std::string>{"g", "s1"});

  schema.mode = SaMode::Generalization;
  CHECK(grouping_columns_for(schema, "s1") == std::vector<std::string>{"g"});

  schema.sa = {"s1"};
  schema.mode = SaMode::QiUpdate;
  CHECK(grouping_columns_for(schema, "s1") == std::vector<std::string>{"g"});

  CHECK_THROWS_AS(grouping_columns_for(schema, "nope"), Error);
}

TEST_CASE("QiUpdate refines the partition on the 3-row multi-SA fixture") {
  const Dataset data = d5();
  const std::vector<std::string> qi{"g"};
  const std::vector<std::string> sa{"s1", "s2"};

  CHECK(alpha_k_anonymity(data, qi, sa, SaMode::Generalization).k == 3);
  CHECK(alpha_k_anonymity(data, qi, sa, SaMode::QiUpdate).k == 1);

  CHECK(oracle::k_anonymity(data, qi, sa, SaMode::QiUpdate) == 1);
  CHECK(oracle::k_anonymity(data, qi, sa, SaMode::Generalization) == 3);
}

TEST_CASE("schema errors propagate from the metric surface") {
  const Dataset data = d4();
  const std::vector<std::string> overlap{"g"};
  CHECK_THROWS_AS(l_diversity(data, overlap, overlap), Error);
  const std::vector<std::string> ghost{"ghost"};
  CHECK_THROWS_AS(k_anonymity(data, ghost), Error);
  const std::vector<std::string> none;
  CHECK_THROWS_AS(t_closeness(data, none, kSaD), Error);
}

TEST_CASE("single-SA mode agreement and ordering invariants") {
  std::mt19937 rng(10101);
  for (int iter = 0; iter < 60; ++iter) {
    oracle::RandomTableSpec spec;
    spec.max_sa = 1;
    const auto table = oracle::random_table(rng, spec);
    const auto& qi = table.qi;
    const auto& sa = table.sa;

    const std::int64_t k = k_anonymity(table.data, qi);
    const std::int64_t l = l_diversity(table.data, qi, sa);
    const std::int64_t el = entropy_l_diversity(table.data, qi, sa);
    const AlphaK ak = alpha_k_anonymity(table.data, qi, sa);

    CHECK(l <= k);
    CHECK(el <= l);
    CHECK(ak.alpha >= 1.0 / static_cast<double>(l) - 1e-12);
    CHECK(ak.k == k);

    // With one SA the two modes coincide on every model.
    CHECK(l_diversity(table.data, qi, sa, SaMode::QiUpdate) == l);
    CHECK(entropy_l_diversity(table.data, qi, sa, SaMode::QiUpdate) == el);
    CHECK(alpha_k_anonymity(table.data, qi, sa, SaMode::QiUpdate).alpha ==
          ak.alpha);
    CHECK(basic_beta_likeness(table.data, qi, sa, SaMode::QiUpdate) ==
          basic_beta_likeness(table.data, qi, sa));
    CHECK(t_closeness(table.data, qi, sa, SaMode::QiUpdate) ==
          t_closeness(table.data, qi, sa));
    CHECK(delta_disclosure(table.data, qi, sa, SaMode::QiUpdate) ==
          delta_disclosure(table.data, qi, sa));
  }
}

TEST_CASE("appending a QI column never increases k or l") {
  std::mt19937 rng(10201);
  for (int iter = 0; iter < 60; ++iter) {
    oracle::RandomTableSpec spec;
    spec.max_qi = 3;
    const auto table = oracle::random_table(rng, spec);
    std::vector<std::string> wider = table.qi;
    wider.push_back(table.sa.back());
    std::vector<std::string> sa_rest = table.sa;
    sa_rest.pop_back();
    if (sa_rest.empty()) {
      CHECK(k_anonymity(table.data, wider) <= k_anonymity(table.data, table.qi));
      continue;
    }
    CHECK(k_anonymity(table.data, wider) <= k_anonymity(table.data, table.qi));
    CHECK(l_diversity(table.data, wider, sa_rest) <=
          l_diversity(table.data, table.qi, sa_rest));
  }
}

TEST_CASE("metrics match the brute-force oracle on random tables") {
  std::mt19937 rng(10301);
  for (int iter = 0; iter < 100; ++iter) {
    const auto table = oracle::random_table(rng);
    for (SaMode mode : {SaMode::Generalization, SaMode::QiUpdate}) {
      const auto& d = table.data;
      const auto& qi = table.qi;
      const auto& sa = table.sa;

      CHECK(k_anonymity(d, qi) == oracle::k_anonymity(d, qi));
      const AlphaK ak = alpha_k_anonymity(d, qi, sa, mode);
      const auto oak = oracle::alpha_k(d, qi, sa, mode);
      CHECK(ak.k == oak.k);
      CHECK(ak.alpha == doctest::Approx(oak.alpha).epsilon(1e-9));
      CHECK(l_diversity(d, qi, sa, mode) ==
            oracle::l_diversity(d, qi, sa, mode));
      CHECK(entropy_l_diversity(d, qi, sa, mode) ==
            oracle::entropy_l(d, qi, sa, mode));
      const RecursiveCL cl = recursive_c_l_diversity(d, qi, sa, mode);
      const auto ocl = oracle::recursive_cl(d, qi, sa, mode);
      CHECK(cl.l == ocl.l);
      CHECK(cl.c == ocl.c);
      CHECK(basic_beta_likeness(d, qi, sa, mode) ==
            doctest::Approx(oracle::basic_beta(d, qi, sa, mode))
                .epsilon(1e-9));
      CHECK(t_closeness(d, qi, sa, mode) ==
            doctest::Approx(oracle::t_closeness(d, qi, sa, mode))
                .epsilon(1e-9));
      CHECK(delta_disclosure(d, qi, sa, mode) ==
            doctest::Approx(oracle::delta_disclosure(d, qi, sa, mode))
                .epsilon(1e-9));
    }
  }
}

TEST_CASE("metric evaluation is deterministic") {
  std::mt19937 rng(10401);
  const auto table = oracle::random_table(rng);
  const double t1 = t_closeness(table.data, table.qi, table.sa);
  const double t2 = t_closeness(table.data, table.qi, table.sa);
  CHECK(t1 == t2);
  const double b1 = basic_beta_likeness(table.data, table.qi, table.sa);
  const double b2 = basic_beta_likeness(table.data, table.qi, table.sa);
  CHECK(b1 == b2);
}
