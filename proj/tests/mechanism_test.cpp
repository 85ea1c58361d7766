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

#include "securegap/mechanism.hpp"

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "securegap/dataset.hpp"
#include "securegap/errors.hpp"
#include "securegap/statistics.hpp"

namespace securegap {
namespace {

QueryVector scaled(const std::vector<long long>& values, long long d) {
  QueryVector q;
  for (auto v : values) q.values.push_back(BigInt(v) * d);
  return q;
}

MechanismConfig config(std::size_t k, Rational eps = 1, long long d = 10,
                       std::uint32_t m = 10) {
  MechanismConfig cfg;
  cfg.k = k;
  cfg.epsilon = eps;
  cfg.gamma_denominator = d;
  cfg.refine_factor = m;
  return cfg;
}

TEST(MechanismConfigTest, Validation) {
  EXPECT_THROW(config(0).validate(), InvalidArgument);
  EXPECT_THROW(config(1, 0).validate(), InvalidArgument);
  EXPECT_THROW(config(1, -1).validate(), InvalidArgument);
  EXPECT_THROW(config(1, 1, 0).validate(), InvalidArgument);
  EXPECT_THROW(config(1, 1, 10, 1).validate(), InvalidArgument);
  EXPECT_NO_THROW(config(3).validate());
}

TEST(MechanismConfigTest, DefaultsAreUnitBudgetTenthGridFactorTen) {
  const MechanismConfig cfg;
  EXPECT_EQ(cfg.epsilon, Rational(1));
  EXPECT_EQ(cfg.gamma_denominator, 10);
  EXPECT_EQ(cfg.refine_factor, 10u);
}

TEST(MechanismConfigTest, NoiseDenominator) {
  // theta_t = eps * gamma_t / (2k) = (3/2) / (2 * 2 * 10 * 10^t).
  const auto cfg = config(2, Rational(3, 2));
  EXPECT_EQ(cfg.noise_denominator(0), 80);
  EXPECT_EQ(cfg.noise_denominator(1), 800);
  EXPECT_EQ(Rational(boost::multiprecision::numerator(cfg.epsilon), cfg.noise_denominator(1)),
            cfg.epsilon * Rational(1, 100) / Rational(4));
}

TEST(SecureMechanismTest, RequiresKPlusTwoQueries) {
  EXPECT_THROW(secure_top_k_gap(scaled({1, 0}, 10), config(1)), InvalidArgument);
  EXPECT_THROW(secure_top_k_gap(scaled({3, 2, 1}, 10), config(2)), InvalidArgument);
  EXPECT_NO_THROW(secure_top_k_gap(scaled({3, 2, 1}, 10), config(1)));
}

TEST(SecureMechanismTest, OutputShape) {
  const auto q = scaled({9, 3, 3, 3, 7, 0, 5}, 10);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto cfg = config(3);
    cfg.seed = seed;
    const auto r = secure_top_k_gap(q, cfg);
    ASSERT_EQ(r.pairs.size(), 3u);
    std::set<std::size_t> seen;
    for (const auto& p : r.pairs) {
      ASSERT_GE(p.index, 1u);
      ASSERT_LE(p.index, q.size());
      ASSERT_GE(p.gap.units, 0);
      seen.insert(p.index);
    }
    ASSERT_EQ(seen.size(), 3u);
    ASSERT_EQ(r.refined_per_round.size(), r.refine_levels);
  }
}

TEST(SecureMechanismTest, DeterministicPerSeed) {
  const auto q = scaled({4, 4, 4, 4, 4, 4}, 10);
  auto cfg = config(2);
  cfg.seed = 99;
  const auto a = secure_top_k_gap(q, cfg);
  const auto b = secure_top_k_gap(q, cfg);
  EXPECT_EQ(a.pairs, b.pairs);
  EXPECT_EQ(a.stats, b.stats);
  cfg.seed = 100;
  bool differs = false;
  for (std::uint64_t s = 100; s < 120 && !differs; ++s) {
    cfg.seed = s;
    differs = secure_top_k_gap(q, cfg).pairs != a.pairs;
  }
  EXPECT_TRUE(differs);
}

TEST(SecureMechanismTest, PruningDoesNotChangeOutput) {
  // Small grid and many equal counts force tie-breaking rounds.
  const auto counts = zipf_counts(300, 400, 1.2);
  const auto q = to_query_vector(counts, 2);
  std::uint32_t max_levels = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto on = config(20, Rational(4), 2, 2);
    on.seed = seed;
    auto off = on;
    off.prune = false;
    const auto a = secure_top_k_gap(q, on);
    const auto b = secure_top_k_gap(q, off);
    ASSERT_EQ(a.pairs, b.pairs) << "seed " << seed;
    ASSERT_EQ(a.refine_levels, b.refine_levels);
    max_levels = std::max(max_levels, a.refine_levels);
  }
  EXPECT_GE(max_levels, 1u);
}

TEST(SecureMechanismTest, GeometricCallCountIdentity) {
  const auto counts = zipf_counts(500, 2000, 1.0);
  const auto q = to_query_vector(counts, 10);
  for (bool prune : {true, false}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      auto cfg = config(10, Rational(1), 10, 2);
      cfg.prune = prune;
      cfg.seed = seed;
      const auto r = secure_top_k_gap(q, cfg);
      std::uint64_t expected = q.size();
      for (auto c : r.refined_per_round) {
        expected += c;
        if (!prune) {
          ASSERT_EQ(c, q.size());
        }
      }
      ASSERT_EQ(r.stats.geometric_calls, expected);
    }
  }
}

TEST(SecureMechanismTest, RefinementOnlyAppendsDigits) {
  const auto q = scaled({5, 5, 5, 5, 5, 5, 5, 5}, 1);
  auto cfg = config(4, Rational(8), 1, 3);
  std::size_t calls = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    cfg.seed = seed;
    std::vector<std::uint32_t> last_level(q.size(), 0);
    (void)secure_top_k_gap(q, cfg, [&](std::uint32_t level, std::size_t i, const BigInt& before,
                                       const BigInt& after) {
      ++calls;
      ASSERT_EQ(level, last_level[i] + 1);
      last_level[i] = level;
      ASSERT_EQ(floor_div(after, 3), before);
    });
  }
  EXPECT_GT(calls, 0u);
}

TEST(SecureMechanismTest, TieCapRaisesResourceExhausted) {
  const QueryVector q{std::vector<BigInt>(40, BigInt(0))};
  auto cfg = config(38, Rational(1), 1, 2);
  cfg.max_refine_level = 1;
  EXPECT_THROW(secure_top_k_gap(q, cfg), ResourceExhausted);
}

TEST(SecureMechanismTest, DominantQueryAlmostAlwaysWins) {
  // Another query beats q_1 only if its noise exceeds q_1's by 100; for two
  // Exp(rate eps/2) variables that has probability e^{-50} / 2.
  const double bound = 3 * 0.5 * std::exp(-50.0);
  const auto q = scaled({100, 0, 0, 0}, 10);
  const int runs = 10000;
  int first = 0;
  for (int s = 0; s < runs; ++s) {
    auto cfg = config(1);
    cfg.seed = static_cast<std::uint64_t>(s);
    first += secure_top_k_gap(q, cfg).pairs[0].index == 1;
  }
  const double miss = 1.0 - static_cast<double>(first) / runs;
  EXPECT_LT(miss, 0.001);
  EXPECT_LE(miss, bound + 3 * std::sqrt(bound / runs) + 1e-12);
}

TEST(SecureMechanismTest, EqualQueriesAreExchangeable) {
  const auto q = scaled({1, 1, 1}, 10);
  std::vector<std::uint64_t> counts(3, 0);
  const int runs = 120000;
  for (int s = 0; s < runs; ++s) {
    auto cfg = config(1);
    cfg.seed = static_cast<std::uint64_t>(s);
    ++counts[secure_top_k_gap(q, cfg).pairs[0].index - 1];
  }
  for (auto c : counts) {
    EXPECT_TRUE(within_three_sigma(static_cast<double>(c) / runs, 1.0 / 3.0, runs));
  }
}

TEST(RoundedReferenceTest, TwoQueryClosedForm) {
  // P(q_1 + X_1 > X_2) for X_i ~ Exp(rate eps/2) and q_1 = 10:
  // 1 - e^{-10 eps / 2} / 2.
  const double p = 1.0 - 0.5 * std::exp(-5.0);
  const auto q = scaled({10, 0}, 10);
  const int runs = 100000;
  int first = 0;
  for (int s = 0; s < runs; ++s) {
    auto cfg = config(1);
    cfg.seed = static_cast<std::uint64_t>(s);
    const auto r = rounded_reference_top_k_gap(q, cfg);
    first += r.pairs[0].index == 1;
    ASSERT_GE(r.pairs[0].gap.units, 0);
  }
  EXPECT_TRUE(within_three_sigma(static_cast<double>(first) / runs, p, runs));
}

TEST(RoundedReferenceTest, RequiresKPlusOne) {
  EXPECT_THROW(rounded_reference_top_k_gap(scaled({1}, 10), config(1)), InvalidArgument);
  EXPECT_NO_THROW(rounded_reference_top_k_gap(scaled({1, 0}, 10), config(1)));
}

TEST(IdealBaselineTest, ShapeAndDominance) {
  const auto q = scaled({100, 0, 0, 0, 0}, 10);
  int first = 0;
  for (std::uint64_t s = 0; s < 2000; ++s) {
    auto cfg = config(2);
    cfg.seed = s;
    const auto r = ideal_baseline_top_k_gap(q, cfg);
    ASSERT_EQ(r.indices.size(), 2u);
    ASSERT_EQ(r.gaps.size(), 2u);
    for (double g : r.gaps) ASSERT_GT(g, 0.0);
    first += r.indices[0] == 1;
  }
  EXPECT_EQ(first, 2000);
}

}  // namespace
}  // namespace securegap
