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

// Exact discrete samplers driven by a BitStream. Nothing in this header
// touches floating point: every probability is a ratio of integers and every
// decision is an integer comparison.

#ifndef SECUREGAP_SAMPLING_HPP_
#define SECUREGAP_SAMPLING_HPP_

#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <utility>

#include "securegap/bit_source.hpp"
#include "securegap/errors.hpp"
#include "securegap/rational.hpp"

namespace securegap {

// Invocation counters for one run. Plain integers: a run is single-threaded,
// and concurrent runs each own their SamplerStats and merge with +=.
struct SamplerStats {
  std::uint64_t geometric_calls = 0;
  std::uint64_t bernoulli_calls = 0;
  std::uint64_t uniform_calls = 0;

  SamplerStats& operator+=(const SamplerStats& other) {
    geometric_calls += other.geometric_calls;
    bernoulli_calls += other.bernoulli_calls;
    uniform_calls += other.uniform_calls;
    return *this;
  }
  void reset() { *this = SamplerStats{}; }
  friend bool operator==(const SamplerStats&, const SamplerStats&) = default;
};

namespace detail {

inline unsigned bit_length(std::uint64_t v) { return static_cast<unsigned>(std::bit_width(v)); }
inline unsigned bit_length(const BigInt& v) {
  return v <= 0 ? 0u : static_cast<unsigned>(boost::multiprecision::msb(v)) + 1;
}

template <BitStream S>
BigInt draw_bits(S& src, unsigned width) {
  BigInt out = 0;
  unsigned shift = 0;
  while (width > 0) {
    const unsigned chunk = width < 64 ? width : 64;
    out |= BigInt(src.bits(chunk)) << shift;
    shift += chunk;
    width -= chunk;
  }
  return out;
}

inline bool fits_u64(const BigInt& v) {
  return v >= 0 && v <= std::numeric_limits<std::uint64_t>::max();
}

}  // namespace detail

// Uniform integer in [0, bound): draws bit_width(bound - 1) bits per attempt
// and rejects values >= bound. Expected attempts < 2.
template <BitStream S>
std::uint64_t uniform_below(std::uint64_t bound, S& src, SamplerStats& stats) {
  if (bound == 0) throw InvalidArgument("uniform_below: bound must be >= 1");
  ++stats.uniform_calls;
  const unsigned width = detail::bit_length(bound - 1);
  for (;;) {
    const std::uint64_t v = src.bits(width);
    if (v < bound) return v;
  }
}

template <BitStream S>
BigInt uniform_below(const BigInt& bound, S& src, SamplerStats& stats) {
  if (bound <= 0) throw InvalidArgument("uniform_below: bound must be >= 1");
  if (detail::fits_u64(bound)) {
    return BigInt(uniform_below(static_cast<std::uint64_t>(bound), src, stats));
  }
  ++stats.uniform_calls;
  const unsigned width = detail::bit_length(BigInt(bound - 1));
  for (;;) {
    BigInt v = detail::draw_bits(src, width);
    if (v < bound) return v;
  }
}

// 1 with probability num / den.
template <BitStream S>
bool bernoulli_rational(std::uint64_t num, std::uint64_t den, S& src,
                        SamplerStats& stats) {
  if (den == 0) throw InvalidArgument("bernoulli_rational: den must be >= 1");
  if (num > den) throw InvalidArgument("bernoulli_rational: num must be <= den");
  ++stats.bernoulli_calls;
  return uniform_below(den, src, stats) < num;
}

template <BitStream S>
bool bernoulli_rational(const BigInt& num, const BigInt& den, S& src,
                        SamplerStats& stats) {
  if (den <= 0) throw InvalidArgument("bernoulli_rational: den must be >= 1");
  if (num < 0 || num > den) {
    throw InvalidArgument("bernoulli_rational: need 0 <= num <= den");
  }
  if (detail::fits_u64(den)) {
    return bernoulli_rational(static_cast<std::uint64_t>(num),
                              static_cast<std::uint64_t>(den), src, stats);
  }
  ++stats.bernoulli_calls;
  return uniform_below(den, src, stats) < num;
}

namespace detail {

// Bernoulli(exp(-num/den)) for 0 <= num <= den: draw B_k ~ Bernoulli(num /
// (den k)) for k = 1, 2, ... until the first failure at k = K, and report
// whether K is odd. P(K > j) = theta^j / j!, so P(K odd) = exp(-theta).
template <BitStream S>
bool exp_neg_series(std::uint64_t num, std::uint64_t den, S& src,
                    SamplerStats& stats) {
  std::uint64_t k = 1;
  for (;; ++k) {
    std::uint64_t scaled = 0;
    bool success = false;
    if (__builtin_mul_overflow(den, k, &scaled)) {
      success = bernoulli_rational(BigInt(num), BigInt(den) * k, src, stats);
    } else {
      success = bernoulli_rational(num, scaled, src, stats);
    }
    if (!success) break;
  }
  return (k & 1U) == 1U;
}

template <BitStream S>
bool exp_neg_series(const BigInt& num, const BigInt& den, S& src,
                    SamplerStats& stats) {
  if (fits_u64(den)) {
    return exp_neg_series(static_cast<std::uint64_t>(num),
                          static_cast<std::uint64_t>(den), src, stats);
  }
  std::uint64_t k = 1;
  while (bernoulli_rational(num, den * k, src, stats)) ++k;
  return (k & 1U) == 1U;
}

// Bernoulli(exp(-s/t)) for an already-reduced s/t.
template <typename Int, BitStream S>
bool exp_neg(const Int& s, const Int& t, S& src, SamplerStats& stats) {
  if (s <= t) return exp_neg_series(s, t, src, stats);
  // exp(-s/t) = exp(-1)^floor(s/t) * exp(-(s mod t)/t)
  const Int whole = s / t;
  const Int rem = s % t;
  for (Int i = 0; i < whole; ++i) {
    if (!exp_neg_series(Int(1), Int(1), src, stats)) return false;
  }
  if (rem == 0) return true;
  return exp_neg_series(rem, t, src, stats);
}

}  // namespace detail

// 1 with probability exactly exp(-s/t). s = 0 is allowed (always 1).
template <BitStream S>
bool bernoulli_exp_neg(std::uint64_t s, std::uint64_t t, S& src,
                       SamplerStats& stats) {
  if (t == 0) throw InvalidArgument("bernoulli_exp_neg: t must be >= 1");
  const std::uint64_t g = std::gcd(s, t);
  return detail::exp_neg(s / g, t / g, src, stats);
}

template <BitStream S>
bool bernoulli_exp_neg(const BigInt& s, const BigInt& t, S& src,
                       SamplerStats& stats) {
  if (t <= 0) throw InvalidArgument("bernoulli_exp_neg: t must be >= 1");
  if (s < 0) throw InvalidArgument("bernoulli_exp_neg: s must be >= 0");
  const BigInt g = boost::multiprecision::gcd(s, t);
  const BigInt rs = s / g;
  const BigInt rt = t / g;
  if (detail::fits_u64(rs) && detail::fits_u64(rt)) {
    return detail::exp_neg(static_cast<std::uint64_t>(rs),
                           static_cast<std::uint64_t>(rt), src, stats);
  }
  return detail::exp_neg(rs, rt, src, stats);
}

// Exact sampler for Geom(1 - exp(-s/t)) on {0, 1, 2, ...}. The ratio s/t is
// reduced once at construction, so a sampler built for a refinement level can
// be reused for every query at that level.
class GeometricSampler {
 public:
  GeometricSampler(BigInt s, BigInt t) {
    if (s <= 0 || t <= 0) {
      throw InvalidArgument("geometric: s and t must both be >= 1");
    }
    const BigInt g = boost::multiprecision::gcd(s, t);
    s_ = s / g;
    t_ = t / g;
    small_ = detail::fits_u64(s_) && detail::fits_u64(t_);
    if (small_) {
      s64_ = static_cast<std::uint64_t>(s_);
      t64_ = static_cast<std::uint64_t>(t_);
    }
  }

  const BigInt& s() const { return s_; }
  const BigInt& t() const { return t_; }

  template <BitStream S>
  BigInt operator()(S& src, SamplerStats& stats) const {
    ++stats.geometric_calls;
    if (small_) return sample_small(src, stats);
    return sample_big(src, stats);
  }

 private:
  // Returns the number of Bernoulli(exp(-1)) successes before the first
  // failure, i.e. a Geom(1 - exp(-1)) sample.
  template <BitStream S>
  static std::uint64_t unit_geometric(S& src, SamplerStats& stats) {
    std::uint64_t v = 0;
    while (detail::exp_neg_series(std::uint64_t{1}, std::uint64_t{1}, src, stats)) ++v;
    return v;
  }

  template <BitStream S>
  BigInt sample_small(S& src, SamplerStats& stats) const {
    std::uint64_t u = 0;
    do {
      u = uniform_below(t64_, src, stats);
    } while (!detail::exp_neg(u, t64_, src, stats));
    const std::uint64_t v = unit_geometric(src, stats);
    // x = u + t v is Geom(1 - exp(-1/t)); floor(x / s) is Geom(1 - exp(-s/t)).
    std::uint64_t tv = 0;
    std::uint64_t x = 0;
    if (__builtin_mul_overflow(t64_, v, &tv) || __builtin_add_overflow(tv, u, &x)) {
      return (BigInt(u) + BigInt(t64_) * v) / s_;
    }
    return BigInt(x / s64_);
  }

  template <BitStream S>
  BigInt sample_big(S& src, SamplerStats& stats) const {
    BigInt u;
    do {
      u = uniform_below(t_, src, stats);
    } while (!detail::exp_neg(u, t_, src, stats));
    const std::uint64_t v = unit_geometric(src, stats);
    return (u + t_ * v) / s_;
  }

  BigInt s_;
  BigInt t_;
  bool small_ = false;
  std::uint64_t s64_ = 0;
  std::uint64_t t64_ = 0;
};

template <BitStream S>
BigInt geometric(const BigInt& s, const BigInt& t, S& src, SamplerStats& stats) {
  return GeometricSampler(s, t)(src, stats);
}

// In-place Fisher-Yates; every ordering is equally likely.
template <typename T, BitStream S>
void shuffle(std::span<T> items, S& src, SamplerStats& stats) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::uint64_t j = uniform_below(static_cast<std::uint64_t>(i), src, stats);
    using std::swap;
    swap(items[i - 1], items[static_cast<std::size_t>(j)]);
  }
}

}  // namespace securegap

#endif  // SECUREGAP_SAMPLING_HPP_
