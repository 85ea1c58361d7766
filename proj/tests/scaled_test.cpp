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

#include <cstdint>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "securegap/errors.hpp"
#include "securegap/rational.hpp"
#include "securegap/scaled.hpp"

namespace securegap {
namespace {

TEST(RationalTest, FloorDivRoundsTowardNegativeInfinity) {
  EXPECT_EQ(floor_div(7, 2), 3);
  EXPECT_EQ(floor_div(-7, 2), -4);
  EXPECT_EQ(floor_div(7, -2), -4);
  EXPECT_EQ(floor_div(-7, -2), 3);
  EXPECT_EQ(floor_div(-8, 2), -4);
  EXPECT_THROW(floor_div(1, 0), InvalidArgument);
}

TEST(RationalTest, RoundDownExamples) {
  EXPECT_EQ(round_down_to(Rational(47, 20), Rational(1, 10)), Rational(23, 10));
  EXPECT_EQ(round_down_to(Rational(-1, 20), Rational(1, 10)), Rational(-1, 10));
  EXPECT_EQ(round_down_to(Rational(7, 10), Rational(1, 10)), Rational(7, 10));
  EXPECT_THROW(round_down_to(Rational(1), Rational(0)), InvalidArgument);
}

TEST(RationalTest, RoundDownAgreesWithIntegerOracle) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> num(-100000, 100000);
  std::uniform_int_distribution<std::int64_t> den(1, 997);
  std::uniform_int_distribution<std::int64_t> g(1, 50);
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t a = num(rng), b = den(rng), c = g(rng);
    // floor((a/b) * c) / c with integer arithmetic only.
    const std::int64_t scaled = a * c;
    std::int64_t q = scaled / b;
    if (scaled % b != 0 && scaled < 0) --q;
    EXPECT_EQ(round_down_to(Rational(a, b), Rational(1, c)), Rational(q, c));
  }
}

TEST(RationalTest, ParseBigIntIsDecimal) {
  EXPECT_EQ(parse_bigint("010"), 10);
  EXPECT_EQ(parse_bigint("-42"), -42);
  EXPECT_EQ(parse_bigint("123456789012345678901234567890").str(), "123456789012345678901234567890");
  EXPECT_THROW(parse_bigint(""), InvalidArgument);
  EXPECT_THROW(parse_bigint("0x10"), InvalidArgument);
  EXPECT_THROW(parse_bigint("1e3"), InvalidArgument);
}

TEST(RationalTest, ParseRationalAcceptsOnlyFractions) {
  EXPECT_EQ(parse_rational("1/1"), Rational(1));
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(parse_rational("-1/3"), Rational(-1, 3));
  EXPECT_THROW(parse_rational("0.5"), InvalidArgument);
  EXPECT_THROW(parse_rational("1e-1"), InvalidArgument);
  EXPECT_THROW(parse_rational("1/0"), InvalidArgument);
  EXPECT_THROW(parse_rational("1/-2"), InvalidArgument);
  EXPECT_THROW(parse_rational("/2"), InvalidArgument);
  EXPECT_THROW(parse_rational("abc"), InvalidArgument);
  EXPECT_EQ(to_string(Rational(3, 2)), "3/2");
  EXPECT_EQ(to_string(Rational(4)), "4");
}

TEST(ResolutionTest, UnitsAndSteps) {
  const Resolution r(10, 10, 2);
  EXPECT_EQ(r.units_per_base(), 100);
  EXPECT_EQ(r.units_per_one(), 1000);
  EXPECT_EQ(r.gamma(), Rational(1, 1000));
  EXPECT_EQ(r.gamma_star(), Rational(1, 10));
  EXPECT_EQ(r.finer().level(), 3u);
  EXPECT_TRUE(r.same_family(Resolution(10, 10)));
  EXPECT_FALSE(r == Resolution(10, 10));
  EXPECT_THROW(Resolution(0, 10), InvalidArgument);
  EXPECT_THROW(Resolution(10, 1), InvalidArgument);
}

TEST(ScaledValueTest, RefineAppendsDigit) {
  const ScaledValue v(47, Resolution(10, 10, 1));
  const ScaledValue r = v.refine(3);
  EXPECT_EQ(r.units(), 473);
  EXPECT_EQ(r.level(), 2u);
  EXPECT_EQ(r.value(), Rational(473, 1000));
  EXPECT_EQ(v.refine().units(), 470);
}

TEST(ScaledValueTest, ComparisonRequiresSameResolution) {
  const ScaledValue a(5, Resolution(10, 10, 0));
  const ScaledValue b(50, Resolution(10, 10, 1));
  EXPECT_THROW((void)(a < b), InvalidArgument);
  EXPECT_TRUE(ScaledValue(4, Resolution(10, 10)) < a);
}

TEST(CoarsenTest, Examples) {
  const Resolution fine(10, 10, 1);
  EXPECT_EQ(coarsen(ScaledValue(47, fine), 0).units(), 4);
  EXPECT_EQ(coarsen(ScaledValue(47, fine), 1).units(), 47);
  EXPECT_EQ(coarsen(ScaledValue(-1, fine), 0).units(), -1);
  EXPECT_THROW(coarsen(ScaledValue(47, fine), 2), InvalidArgument);
}

TEST(CoarsenTest, ComposesAndMatchesDirectRounding) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::int64_t> units(-1000000, 1000000);
  const Resolution r(3, 7, 5);
  for (int i = 0; i < 3000; ++i) {
    const ScaledValue v(units(rng), r);
    for (std::uint32_t t1 = 0; t1 <= 5; ++t1) {
      const ScaledValue c1 = coarsen(v, t1);
      ASSERT_EQ(c1.value(), round_down_to(v.value(), r.at_level(t1).gamma()));
      for (std::uint32_t t0 = 0; t0 <= t1; ++t0) {
        ASSERT_EQ(coarsen(c1, t0), coarsen(v, t0));
      }
    }
  }
}

TEST(RoundedGapTest, Examples) {
  const Resolution base(10, 10);
  const ScaledValue a(23, base), b(11, base);
  EXPECT_EQ(format_gap(rounded_gap(a, b, true), 10), "1.1");
  EXPECT_EQ(format_gap(rounded_gap(a, b, false), 10), "1.2");
  const Resolution fine(10, 10, 2);
  EXPECT_EQ(rounded_gap(ScaledValue(501, fine), ScaledValue(500, fine), true).units, 0);
}

TEST(RoundedGapTest, Preconditions) {
  const Resolution base(10, 10);
  EXPECT_THROW(rounded_gap(ScaledValue(1, base), ScaledValue(1, base), false),
               PreconditionViolation);
  EXPECT_THROW(rounded_gap(ScaledValue(1, base), ScaledValue(2, base), false),
               PreconditionViolation);
  EXPECT_THROW(rounded_gap(ScaledValue(20, base.finer()), ScaledValue(1, base), false),
               InvalidArgument);
}

// gamma_t-rounded inputs plus the fractional-part bit determine the gamma_*
// rounding of the true difference.
TEST(RoundedGapTest, RandomGridCasesAgainstRationalOracle) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::int64_t> thousandths(0, 20000);
  std::uniform_int_distribution<std::uint32_t> level(0, 2);
  int checked = 0;
  while (checked < 10000) {
    const Rational xi(thousandths(rng), 1000);
    const Rational xj(thousandths(rng), 1000);
    const Resolution res(10, 10, level(rng));
    const Rational gt = res.gamma();
    const Rational fi = xi - round_down_to(xi, gt);
    const Rational fj = xj - round_down_to(xj, gt);
    const ScaledValue a(floor(xi / gt), res), b(floor(xj / gt), res);
    if (a.units() <= b.units()) continue;
    const bool delta = fi < fj;
    const GapValue got = rounded_gap(a, b, delta);
    const BigInt want = floor((xi - xj) * Rational(10));
    ASSERT_EQ(got.units, want) << xi << " " << xj << " level " << res.level();
    ++checked;
  }
}

TEST(GapFormatTest, DecimalAndFraction) {
  EXPECT_EQ(format_gap(GapValue{123}, 10), "12.3");
  EXPECT_EQ(format_gap(GapValue{5}, 100), "0.05");
  EXPECT_EQ(format_gap(GapValue{0}, 10), "0.0");
  EXPECT_EQ(format_gap(GapValue{7}, 1), "7");
  EXPECT_EQ(format_gap(GapValue{7}, 2), "7/2");
  EXPECT_EQ(format_gap(GapValue{-3}, 10), "-0.3");
}

TEST(GapFormatTest, RoundTrip) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::int64_t> units(0, 1'000'000'000);
  for (const BigInt& d : {BigInt(1), BigInt(2), BigInt(10), BigInt(1000), BigInt(12)}) {
    for (int i = 0; i < 200; ++i) {
      const GapValue g{units(rng)};
      ASSERT_EQ(parse_gap(format_gap(g, d), d), g) << format_gap(g, d);
    }
  }
  EXPECT_THROW(parse_gap("1.23", 10), InvalidArgument);
  EXPECT_THROW(parse_gap("3/4", 2), InvalidArgument);
}

}  // namespace
}  // namespace securegap
