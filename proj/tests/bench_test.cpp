// Copyright 2026 The securegap Authors
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

#include "securegap/bench.hpp"

#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "securegap/dataset.hpp"
#include "securegap/errors.hpp"
#include "securegap/report_json.hpp"

namespace securegap {
namespace {

TEST(VariantTest, NamesRoundTrip) {
  for (Variant v : {Variant::kSecure, Variant::kOptimizedSecure, Variant::kRoundedReference,
                    Variant::kIdealBaseline}) {
    EXPECT_EQ(parse_variant(variant_name(v)), v);
  }
  EXPECT_THROW(parse_variant("fast"), InvalidArgument);
  EXPECT_TRUE(is_secure(Variant::kOptimizedSecure));
  EXPECT_FALSE(is_secure(Variant::kIdealBaseline));
}

TEST(BenchTest, CasesAndCountIdentity) {
  const auto q = to_query_vector(zipf_counts(300, 1000, 1.0), 10);
  BenchConfig config;
  config.ks = {5, 20};
  config.trials = 20;
  config.variants = {Variant::kSecure, Variant::kOptimizedSecure, Variant::kRoundedReference,
                     Variant::kIdealBaseline};
  const auto report = bench("zipf", q, config);
  ASSERT_EQ(report.cases.size(), 8u);
  for (const auto& c : report.cases) {
    EXPECT_EQ(c.n, 300u);
    EXPECT_GT(c.mean_ms, 0.0);
    if (is_secure(c.variant)) {
      EXPECT_EQ(c.count_identity_violations, 0u);
      EXPECT_GE(c.mean_geometric_calls, 300.0);
      std::uint64_t runs = 0;
      for (const auto& [level, count] : c.refine_level_histogram) runs += count;
      EXPECT_EQ(runs, 20u);
      // Phases are measured inside the run and cover it.
      EXPECT_NEAR(c.initial_selection_ms + c.tie_resolution_ms + c.gap_computation_ms, c.mean_ms,
                  1e-9 + 1e-9 * c.mean_ms);
    }
  }
  const std::string table = format_table(report);
  EXPECT_NE(table.find("opt-secure"), std::string::npos);
  EXPECT_NE(table.find("ideal-baseline"), std::string::npos);
}

TEST(BenchTest, TrialSeedsAreDistinct) {
  EXPECT_NE(trial_seed(1, 0), trial_seed(1, 1));
  EXPECT_NE(trial_seed(1, 0), trial_seed(2, 0));
  EXPECT_EQ(trial_seed(7, 3), trial_seed(7, 3));
}

TEST(BenchTest, RejectsZeroTrials) {
  const auto q = to_query_vector(zipf_counts(10, 10, 1.0), 10);
  BenchConfig config;
  config.trials = 0;
  EXPECT_THROW(bench_case("x", q, 1, Variant::kSecure, config), InvalidArgument);
}

TEST(ReportJsonTest, RunSchemaAndExactGaps) {
  QueryVector q;
  for (int v : {50, 40, 40, 10, 0}) q.values.push_back(BigInt(v));
  MechanismConfig cfg;
  cfg.k = 2;
  cfg.seed = 12;
  const auto r = secure_top_k_gap(q, cfg);
  const std::vector<std::string> items{"a", "b", "c", "d", "e"};
  const Json j = run_json("secure", cfg, r, &items);
  for (const char* key : {"variant", "k", "epsilon", "gamma_star", "indices", "gaps",
                          "refine_levels", "sampler_stats", "phase_ms"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["epsilon"], "1");
  EXPECT_EQ(j["gamma_star"], "1/10");
  ASSERT_EQ(j["gaps"].size(), 2u);
  const Json back = Json::parse(j.dump());
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(back["indices"][i].get<std::size_t>(), r.pairs[i].index);
    EXPECT_EQ(parse_gap(back["gaps"][i].get<std::string>(), 10), r.pairs[i].gap);
    EXPECT_EQ(back["items"][i].get<std::string>(), items[r.pairs[i].index - 1]);
  }
  EXPECT_EQ(back["sampler_stats"]["geometric"].get<std::uint64_t>(), r.stats.geometric_calls);
}

TEST(ReportJsonTest, IdealGapsRoundTripAsDoubles) {
  QueryVector q;
  for (int v : {50, 40, 40, 10}) q.values.push_back(BigInt(v));
  MechanismConfig cfg;
  cfg.k = 2;
  const auto r = ideal_baseline_top_k_gap(q, cfg);
  const Json j = run_json(cfg, r);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(std::stod(j["gaps"][i].get<std::string>()), r.gaps[i]);
  }
}

TEST(ReportJsonTest, SuiteReport) {
  SuiteReport s{"demo", {}};
  CheckReport c;
  c.name = "c";
  c.add(make_report("t", 1.0, 1, kDefaultAlpha));
  s.checks.push_back(c);
  const Json j = to_json(s);
  EXPECT_EQ(j["suite"], "demo");
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["checks"][0]["tests"][0]["dof"], 1);
}

}  // namespace
}  // namespace securegap
