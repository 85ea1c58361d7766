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

// Grid-valued quantities. A Resolution is gamma_t = 1 / (d * M^t); values on
// that grid are stored as integer unit counts so that every comparison made
// by a mechanism is an integer comparison.

#ifndef SECUREGAP_SCALED_HPP_
#define SECUREGAP_SCALED_HPP_

#include <cstdint>
#include <string>
#include <utility>

#include "securegap/errors.hpp"
#include "securegap/rational.hpp"

namespace securegap {

class Resolution {
 public:
  // gamma_0 = 1 / base_denominator, refined by `refine_factor` per level.
  Resolution(BigInt base_denominator, std::uint32_t refine_factor,
             std::uint32_t level = 0)
      : base_den_(std::move(base_denominator)), factor_(refine_factor), level_(level) {
    if (base_den_ < 1) throw InvalidArgument("Resolution: base denominator must be >= 1");
    if (factor_ < 2) throw InvalidArgument("Resolution: refine factor must be >= 2");
  }

  const BigInt& base_denominator() const { return base_den_; }
  std::uint32_t refine_factor() const { return factor_; }
  std::uint32_t level() const { return level_; }

  // M^level: how many level-t units make one gamma_* unit.
  BigInt units_per_base() const { return ipow(BigInt(factor_), level_); }
  // d * M^level: how many level-t units make 1.
  BigInt units_per_one() const { return base_den_ * units_per_base(); }
  Rational gamma() const { return Rational(BigInt(1), units_per_one()); }
  Rational gamma_star() const { return Rational(BigInt(1), base_den_); }

  Resolution finer() const { return Resolution(base_den_, factor_, level_ + 1); }
  Resolution at_level(std::uint32_t level) const {
    return Resolution(base_den_, factor_, level);
  }

  // Same grid family (d, M); levels may differ.
  bool same_family(const Resolution& other) const {
    return base_den_ == other.base_den_ && factor_ == other.factor_;
  }
  friend bool operator==(const Resolution& a, const Resolution& b) {
    return a.same_family(b) && a.level_ == b.level_;
  }

 private:
  BigInt base_den_;
  std::uint32_t factor_;
  std::uint32_t level_;
};

// units * gamma_t.
class ScaledValue {
 public:
  ScaledValue(BigInt units, Resolution res) : units_(std::move(units)), res_(std::move(res)) {}

  const BigInt& units() const { return units_; }
  const Resolution& resolution() const { return res_; }
  std::uint32_t level() const { return res_.level(); }
  Rational value() const { return Rational(units_, res_.units_per_one()); }

  // One level finer, adding `increment` units of the finer grid. The
  // represented value grows by increment * gamma_{t+1}; with increment = 0 it
  // is unchanged.
  ScaledValue refine(const BigInt& increment = 0) const {
    return ScaledValue(units_ * res_.refine_factor() + increment, res_.finer());
  }

  // Only values at the same resolution are comparable.
  friend bool operator==(const ScaledValue& a, const ScaledValue& b) {
    require_same(a, b);
    return a.units_ == b.units_;
  }
  friend bool operator<(const ScaledValue& a, const ScaledValue& b) {
    require_same(a, b);
    return a.units_ < b.units_;
  }
  friend bool operator>(const ScaledValue& a, const ScaledValue& b) { return b < a; }

  static void require_same(const ScaledValue& a, const ScaledValue& b) {
    if (!(a.res_ == b.res_)) {
      throw InvalidArgument("ScaledValue: comparison across resolutions");
    }
  }

 private:
  BigInt units_;
  Resolution res_;
};

// A released gap: units * gamma_*, never negative.
struct GapValue {
  BigInt units;
  friend bool operator==(const GapValue&, const GapValue&) = default;
};

// floor(value) on the coarser grid of `target_level`.
inline ScaledValue coarsen(const ScaledValue& v, std::uint32_t target_level) {
  if (target_level > v.level()) {
    throw InvalidArgument("coarsen: target level is finer than the value's level");
  }
  const BigInt divisor = ipow(BigInt(v.resolution().refine_factor()), v.level() - target_level);
  return ScaledValue(floor_div(v.units(), divisor), v.resolution().at_level(target_level));
}

// floor(a - b - delta * gamma_t) on the gamma_* grid. `delta_correction`
// carries the fractional-part ordering of the underlying continuous values:
// true when a's remainder below gamma_t is smaller than b's.
inline GapValue rounded_gap(const ScaledValue& a, const ScaledValue& b,
                            bool delta_correction) {
  if (!(a.resolution() == b.resolution())) {
    throw InvalidArgument("rounded_gap: operands at different resolutions");
  }
  if (a.units() <= b.units()) {
    throw PreconditionViolation("rounded_gap: requires a > b");
  }
  BigInt diff = a.units() - b.units();
  if (delta_correction) diff -= 1;
  return GapValue{floor_div(diff, a.resolution().units_per_base())};
}

// Exact text form of `gap` with gamma_* = 1 / base_denominator: a decimal
// ("12.3") when base_denominator is a power of ten, "units/denominator"
// otherwise.
inline std::string format_gap(const GapValue& gap, const BigInt& base_denominator) {
  if (base_denominator < 1) throw InvalidArgument("format_gap: bad denominator");
  BigInt d = base_denominator;
  unsigned digits = 0;
  while (d % 10 == 0) {
    d /= 10;
    ++digits;
  }
  if (d != 1) return gap.units.str() + "/" + base_denominator.str();
  std::string text = BigInt(boost::multiprecision::abs(gap.units)).str();
  if (digits > 0) {
    if (text.size() <= digits) text.insert(0, digits - text.size() + 1, '0');
    text.insert(text.size() - digits, ".");
  }
  return gap.units < 0 ? "-" + text : text;
}

// Inverse of format_gap.
inline GapValue parse_gap(const std::string& text, const BigInt& base_denominator) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    if (parse_bigint(text.substr(slash + 1)) != base_denominator) {
      throw InvalidArgument("parse_gap: denominator mismatch in \"" + text + "\"");
    }
    return GapValue{parse_bigint(text.substr(0, slash))};
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) return GapValue{parse_bigint(text) * base_denominator};
  const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  const BigInt scale = ipow(BigInt(10), static_cast<std::uint32_t>(text.size() - dot - 1));
  if (scale != base_denominator) {
    throw InvalidArgument("parse_gap: precision mismatch in \"" + text + "\"");
  }
  return GapValue{parse_bigint(digits)};
}

}  // namespace securegap

#endif  // SECUREGAP_SCALED_HPP_
