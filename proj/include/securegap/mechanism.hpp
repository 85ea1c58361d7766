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

// Noisy Top-k with Gap.
//
//   secure_top_k_gap           exact discrete implementation; the only variant
//                              meant for releasing results.
//   rounded_reference_top_k_gap
//                              continuous exponential noise in binary floating
//                              point, gaps rounded down to gamma_*. Insecure;
//                              used as a statistical oracle in tests.
//   ideal_baseline_top_k_gap   continuous noise, unrounded gaps. Insecure;
//                              used as the timing comparator in benchmarks.
//
// Query answers are passed in gamma_* units (so q_i = values[i] / d). Result
// indices are 1-based.

#ifndef SECUREGAP_MECHANISM_HPP_
#define SECUREGAP_MECHANISM_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "securegap/bit_source.hpp"
#include "securegap/errors.hpp"
#include "securegap/rational.hpp"
#include "securegap/sampling.hpp"
#include "securegap/scaled.hpp"
#include "securegap/selection.hpp"

namespace securegap {

struct MechanismConfig {
  std::size_t k = 1;
  Rational epsilon = 1;
  // gamma_* = 1 / gamma_denominator.
  BigInt gamma_denominator = 10;
  std::uint32_t refine_factor = 10;
  bool prune = true;
  std::uint64_t seed = 0;
  std::uint32_t max_refine_level = 64;

  void validate() const {
    if (k < 1) throw InvalidArgument("k must be >= 1");
    if (epsilon <= 0) throw InvalidArgument("epsilon must be > 0");
    if (gamma_denominator < 1) throw InvalidArgument("gamma_* must be 1/d with d >= 1");
    if (refine_factor < 2) throw InvalidArgument("refine factor M must be >= 2");
    if (max_refine_level < 1) throw InvalidArgument("max refine level must be >= 1");
  }

  Resolution base_resolution() const { return Resolution(gamma_denominator, refine_factor); }

  // Denominator of theta_t = epsilon * gamma_t / (2k) written with numerator
  // numerator(epsilon): den(epsilon) * 2k * d * M^t.
  BigInt noise_denominator(std::uint32_t level) const {
    return boost::multiprecision::denominator(epsilon) * BigInt(2 * k) * gamma_denominator *
           ipow(BigInt(refine_factor), level);
  }
};

// Answers to sensitivity-1 queries, in gamma_* units.
struct QueryVector {
  std::vector<BigInt> values;

  std::size_t size() const { return values.size(); }
};

struct SelectionPair {
  std::size_t index = 0;  // 1-based
  GapValue gap;
  friend bool operator==(const SelectionPair&, const SelectionPair&) = default;
};

// Wall time of the three stages: initial noisy selection of k+2 candidates,
// the tie-resolution loop, and gap computation.
struct PhaseTimings {
  std::chrono::nanoseconds initial_selection{0};
  std::chrono::nanoseconds tie_resolution{0};
  std::chrono::nanoseconds gap_computation{0};

  std::chrono::nanoseconds total() const {
    return initial_selection + tie_resolution + gap_computation;
  }
};

struct SelectionResult {
  std::vector<SelectionPair> pairs;
  // Final resolution level t (gamma_t = gamma_* / M^t).
  std::uint32_t refine_levels = 0;
  SamplerStats stats;
  PhaseTimings phases;
  // Number of queries that received refinement noise in each round.
  std::vector<std::size_t> refined_per_round;
};

// Called once per refined query: (level, 0-based query, units before, units
// after). Test hook; empty by default.
using RefinementObserver =
    std::function<void(std::uint32_t, std::size_t, const BigInt&, const BigInt&)>;

namespace detail {

inline void check_queries(const QueryVector& q, std::size_t min_n, const char* who) {
  if (q.size() < min_n) {
    throw InvalidArgument(std::string(who) + ": need at least " + std::to_string(min_n) +
                          " queries, got " + std::to_string(q.size()));
  }
}

template <typename T>
std::vector<T> gather(const std::vector<T>& values, std::span<const std::size_t> at) {
  std::vector<T> out;
  out.reserve(at.size());
  for (std::size_t i : at) out.push_back(values[i]);
  return out;
}

}  // namespace detail

// Exact mechanism. Every query i draws its level-t noise from substream
// (i + 1, t); the final shuffle uses substream (0, 0). With a fixed seed the
// output is therefore the same with and without pruning.
inline SelectionResult secure_top_k_gap(const QueryVector& q, const MechanismConfig& cfg,
                                        const RefinementObserver& observer = {}) {
  using Clock = std::chrono::steady_clock;
  cfg.validate();
  const std::size_t n = q.size();
  const std::size_t k = cfg.k;
  const std::size_t width = k + 2;
  detail::check_queries(q, width, "secure_top_k_gap");

  const BitSource source(cfg.seed);
  const BigInt& eps_num = boost::multiprecision::numerator(cfg.epsilon);
  SelectionResult result;
  SamplerStats& stats = result.stats;

  const auto start = Clock::now();
  std::vector<BigInt> units = q.values;
  {
    const GeometricSampler noise(eps_num, cfg.noise_denominator(0));
    for (std::size_t i = 0; i < n; ++i) {
      SeededBitStream stream = source.stream(i + 1, 0);
      units[i] += noise(stream, stats);
    }
  }
  std::vector<std::size_t> top = select_top(std::span<const BigInt>(units), width);
  const auto initial_done = Clock::now();

  std::vector<std::size_t> pool;
  if (cfg.prune) {
    pool = pool_at_or_above(std::span<const BigInt>(units), units[top.back()]);
  } else {
    pool.resize(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
  }
  std::uint32_t level = 0;
  const BigInt factor(cfg.refine_factor);
  while (has_tie(std::span<const BigInt>(detail::gather(units, top)))) {
    if (level == cfg.max_refine_level) {
      throw ResourceExhausted("secure_top_k_gap: ties persist after " +
                              std::to_string(level) + " refinement levels");
    }
    ++level;
    const GeometricSampler noise(eps_num, cfg.noise_denominator(level));
    for (std::size_t i : pool) {
      SeededBitStream stream = source.stream(i + 1, level);
      const BigInt g = noise(stream, stats);
      BigInt refined = units[i] * factor + g % factor;
      if (observer) observer(level, i, units[i], refined);
      units[i] = std::move(refined);
    }
    result.refined_per_round.push_back(pool.size());
    if (cfg.prune) {
      // Pool members are the only values at the current level; select among
      // them (pool is ascending, so positional tie-break == index tie-break).
      const std::vector<BigInt> current = detail::gather(units, pool);
      const auto local = select_top(std::span<const BigInt>(current), width);
      top.clear();
      for (std::size_t p : local) top.push_back(pool[p]);
      const BigInt& threshold = units[top.back()];
      std::erase_if(pool, [&](std::size_t i) { return units[i] < threshold; });
    } else {
      top = select_top(std::span<const BigInt>(units), width);
    }
  }
  result.refine_levels = level;
  const auto ties_done = Clock::now();

  // Random ordering of the sub-gamma_t remainders of the k+1 winners.
  std::vector<std::size_t> order(k + 1);
  std::iota(order.begin(), order.end(), std::size_t{1});
  {
    SeededBitStream stream = source.stream(0, 0);
    shuffle(std::span<std::size_t>(order), stream, stats);
  }
  const Resolution res = cfg.base_resolution().at_level(level);
  result.pairs.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const bool delta = order[i] < order[i + 1];
    result.pairs.push_back(SelectionPair{
        top[i] + 1,
        rounded_gap(ScaledValue(units[top[i]], res), ScaledValue(units[top[i + 1]], res),
                    delta)});
  }
  const auto gaps_done = Clock::now();

  result.phases.initial_selection = initial_done - start;
  result.phases.tie_resolution = ties_done - initial_done;
  result.phases.gap_computation = gaps_done - ties_done;
  return result;
}

namespace detail {

// Uniform double in (0, 1] from 53 fresh bits.
template <BitStream S>
double unit_interval_open_closed(S& src) {
  return static_cast<double>(src.bits(53) + 1) * 0x1.0p-53;
}

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

}  // namespace detail

// Floating-point oracle: q_i + Exp(2k/epsilon) by inverse CDF, top k+1, gaps
// rounded down to gamma_*. Carries the floating-point artifacts the secure
// mechanism exists to avoid; never use it to release data.
inline SelectionResult rounded_reference_top_k_gap(const QueryVector& q,
                                                   const MechanismConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  cfg.validate();
  const std::size_t k = cfg.k;
  detail::check_queries(q, k + 1, "rounded_reference_top_k_gap");
  const double d = detail::to_double(Rational(cfg.gamma_denominator));
  const double scale = detail::to_double(Rational(BigInt(2 * k)) / cfg.epsilon);
  const BitSource source(cfg.seed);
  SelectionResult result;

  const auto start = Clock::now();
  std::vector<double> noisy(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    SeededBitStream stream = source.stream(i + 1, 0);
    noisy[i] = q.values[i].convert_to<double>() / d -
               scale * std::log(detail::unit_interval_open_closed(stream));
  }
  const auto top = select_top(std::span<const double>(noisy), k + 1);
  const auto selected = Clock::now();
  for (std::size_t i = 0; i < k; ++i) {
    const double gap = std::floor((noisy[top[i]] - noisy[top[i + 1]]) * d);
    result.pairs.push_back(SelectionPair{top[i] + 1, GapValue{BigInt(static_cast<long long>(gap))}});
  }
  result.phases.initial_selection = selected - start;
  result.phases.gap_computation = Clock::now() - selected;
  return result;
}

struct IdealSelectionResult {
  std::vector<std::size_t> indices;  // 1-based
  std::vector<double> gaps;
  std::chrono::nanoseconds elapsed{0};
};

// Continuous Noisy Top-k with Gap with std::exponential_distribution noise.
// Timing comparator only.
inline IdealSelectionResult ideal_baseline_top_k_gap(const QueryVector& q,
                                                     const MechanismConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  cfg.validate();
  const std::size_t k = cfg.k;
  detail::check_queries(q, k + 1, "ideal_baseline_top_k_gap");
  const double d = detail::to_double(Rational(cfg.gamma_denominator));
  const double rate = detail::to_double(cfg.epsilon / Rational(BigInt(2 * k)));

  const auto start = Clock::now();
  std::mt19937_64 engine(cfg.seed);
  std::exponential_distribution<double> noise(rate);
  std::vector<double> noisy(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    noisy[i] = q.values[i].convert_to<double>() / d + noise(engine);
  }
  const auto top = select_top(std::span<const double>(noisy), k + 1);
  IdealSelectionResult result;
  for (std::size_t i = 0; i < k; ++i) {
    result.indices.push_back(top[i] + 1);
    result.gaps.push_back(noisy[top[i]] - noisy[top[i + 1]]);
  }
  result.elapsed = Clock::now() - start;
  return result;
}

}  // namespace securegap

#endif  // SECUREGAP_MECHANISM_HPP_
