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

// Verification of the properties the secure mechanism rests on. Exhaustive
// checks run in exact rational arithmetic and admit no tolerance; the
// distributional checks draw from the library's samplers and compare against
// analytic PMFs with chi-square tests at a fixed alpha.

#ifndef SECUREGAP_VERIFICATION_HPP_
#define SECUREGAP_VERIFICATION_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "securegap/bit_source.hpp"
#include "securegap/mechanism.hpp"
#include "securegap/rational.hpp"
#include "securegap/sampling.hpp"
#include "securegap/scaled.hpp"
#include "securegap/statistics.hpp"

namespace securegap {

struct CheckReport {
  std::string name;
  bool pass = true;
  std::uint64_t cases = 0;
  std::string counterexample;  // first failing case, exact checks only
  std::vector<GofReport> tests;
  std::map<std::string, double> metrics;
  std::vector<std::string> notes;

  void add(GofReport report) {
    pass = pass && report.pass;
    tests.push_back(std::move(report));
  }
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
};

namespace detail {

inline std::vector<Rational> grid(const Rational& step, const Rational& range_max) {
  if (step <= 0) throw InvalidArgument("grid step must be > 0");
  std::vector<Rational> out;
  const BigInt count = floor(range_max / step);
  for (BigInt j = 0; j <= count; ++j) out.push_back(Rational(j) * step);
  return out;
}

inline bool is_integer(const Rational& x) { return boost::multiprecision::denominator(x) == 1; }

// Geom(1 - exp(-theta)) PMF.
inline double geometric_pmf(double theta, std::uint64_t m) {
  return -std::expm1(-theta) * std::exp(-theta * static_cast<double>(m));
}

inline double to_double(const BigInt& v) { return v.convert_to<double>(); }

inline double theta_of(const BigInt& s, const BigInt& t) {
  return to_double(s) / to_double(t);
}

}  // namespace detail

// floor(x_i - x_j) = floor(x_i) - floor(x_j) - delta * gamma on the gamma
// grid, delta = 1 iff x_i's remainder below gamma is smaller than x_j's, for
// every pair of grid points in [0, range_max].
inline CheckReport check_rounding_identity(const Rational& step, const Rational& range_max,
                                           const Rational& gamma) {
  if (gamma <= 0) throw InvalidArgument("check_rounding_identity: gamma must be > 0");
  if (!detail::is_integer(gamma / step)) {
    throw InvalidArgument("check_rounding_identity: grid step must divide gamma");
  }
  CheckReport report;
  report.name = "rounding_identity gamma=" + to_string(gamma);
  const auto xs = detail::grid(step, range_max);
  std::vector<Rational> down(xs.size());
  std::vector<Rational> rem(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    down[i] = round_down_to(xs[i], gamma);
    rem[i] = xs[i] - down[i];
  }
  std::uint64_t mismatches = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      ++report.cases;
      const bool delta = rem[i] < rem[j];
      const Rational lhs = round_down_to(xs[i] - xs[j], gamma);
      Rational rhs = down[i] - down[j];
      if (delta) rhs -= gamma;
      if (lhs != rhs) {
        if (mismatches++ == 0) {
          report.counterexample = "x_i=" + to_string(xs[i]) + " x_j=" + to_string(xs[j]);
        }
      }
    }
  }
  report.metrics["mismatches"] = static_cast<double>(mismatches);
  report.pass = mismatches == 0;
  return report;
}

// |floor_gamma(x) - floor_gamma(x')| <= delta for every pair of grid points
// with |x - x'| <= delta. Records whether the bound is attained.
inline CheckReport check_rounddown_sensitivity(const Rational& delta, const Rational& gamma,
                                               const Rational& step,
                                               const Rational& range_max) {
  if (delta <= 0 || gamma <= 0) {
    throw InvalidArgument("check_rounddown_sensitivity: delta and gamma must be > 0");
  }
  if (!detail::is_integer(delta / gamma)) {
    throw InvalidArgument("check_rounddown_sensitivity: delta must be a multiple of gamma");
  }
  if (!detail::is_integer(gamma / step)) {
    throw InvalidArgument("check_rounddown_sensitivity: grid step must divide gamma");
  }
  CheckReport report;
  report.name = "rounddown_sensitivity delta=" + to_string(delta) + " gamma=" + to_string(gamma);
  const auto xs = detail::grid(step, range_max);
  std::vector<Rational> down(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) down[i] = round_down_to(xs[i], gamma);
  std::uint64_t violations = 0;
  Rational largest = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (boost::multiprecision::abs(xs[i] - xs[j]) > delta) continue;
      ++report.cases;
      const Rational diff = boost::multiprecision::abs(down[i] - down[j]);
      largest = std::max(largest, diff);
      if (diff > delta && violations++ == 0) {
        report.counterexample = "x=" + to_string(xs[i]) + " x'=" + to_string(xs[j]);
      }
    }
  }
  report.metrics["violations"] = static_cast<double>(violations);
  report.metrics["max_difference"] = largest.convert_to<double>();
  report.metrics["bound_attained"] = largest == delta ? 1.0 : 0.0;
  report.pass = violations == 0;
  return report;
}

// gamma * Geom(1 - exp(-gamma/beta)) drawn with the exact sampler, against
// the analytic scaled-geometric PMF; also checks the mean and the mode.
inline CheckReport check_scaled_geometric(const Rational& beta, const Rational& gamma,
                                          std::uint64_t n, std::uint64_t seed,
                                          double alpha = kDefaultAlpha) {
  const Rational theta = gamma / beta;
  const BigInt s = boost::multiprecision::numerator(theta);
  const BigInt t = boost::multiprecision::denominator(theta);
  CheckReport report;
  report.name = "scaled_geometric beta=" + to_string(beta) + " gamma=" + to_string(gamma);
  const GeometricSampler sampler(s, t);
  SeededBitStream stream = BitSource(seed).stream(0, 0);
  SamplerStats stats;
  std::vector<std::uint64_t> samples(n);
  for (auto& x : samples) x = sampler(stream, stats).convert_to<std::uint64_t>();
  report.cases = n;
  const double th = detail::theta_of(s, t);
  report.add(chi_square_gof_integer(report.name, std::span<const std::uint64_t>(samples),
                                    [th](std::uint64_t m) { return detail::geometric_pmf(th, m); },
                                    alpha));
  const double p = -std::expm1(-th);
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(n);
  const double expected_mean = (1.0 - p) / p;
  const double sigma = std::sqrt((1.0 - p) / (p * p) / static_cast<double>(n));
  report.metrics["mean_units"] = mean;
  report.metrics["expected_mean_units"] = expected_mean;
  report.require(std::abs(mean - expected_mean) <= 3.0 * sigma, "mean within 3 sigma");
  std::vector<std::uint64_t> counts(*std::max_element(samples.begin(), samples.end()) + 1, 0);
  for (auto x : samples) ++counts[x];
  report.require(std::max_element(counts.begin(), counts.end()) == counts.begin(),
                 "empirical mode at 0");
  return report;
}

// Geom(1 - exp(-s/t)) mod M against the truncated geometric PMF
// p (1-p)^m / (1 - (1-p)^M) on {0, ..., M-1}.
inline CheckReport check_truncated_geometric(const BigInt& s, const BigInt& t,
                                             std::uint32_t modulus, std::uint64_t n,
                                             std::uint64_t seed, double alpha = kDefaultAlpha) {
  if (modulus < 1) throw InvalidArgument("check_truncated_geometric: M must be >= 1");
  CheckReport report;
  report.name = "truncated_geometric s=" + s.str() + " t=" + t.str() + " M=" +
                std::to_string(modulus);
  const GeometricSampler sampler(s, t);
  SeededBitStream stream = BitSource(seed).stream(0, 0);
  SamplerStats stats;
  std::vector<std::uint64_t> counts(modulus, 0);
  bool in_support = true;
  for (std::uint64_t i = 0; i < n; ++i) {
    const BigInt g = BigInt(sampler(stream, stats) % modulus);
    in_support = in_support && g >= 0 && g < modulus;
    ++counts[g.convert_to<std::size_t>()];
  }
  report.cases = n;
  report.require(in_support, "samples within {0..M-1}");
  if (modulus == 1) {
    report.require(counts[0] == n, "M = 1 yields the constant 0");
    return report;
  }
  const double th = detail::theta_of(sampler.s(), sampler.t());
  const double norm = -std::expm1(-th * modulus);
  std::vector<double> probs(modulus);
  for (std::uint32_t m = 0; m < modulus; ++m) probs[m] = detail::geometric_pmf(th, m) / norm;
  report.add(chi_square_gof(report.name, counts, probs, alpha));
  return report;
}

namespace detail {

// Exponential(beta) by inverse CDF in double precision; exact as a rational.
template <BitStream S>
Rational exponential_as_rational(double beta, S& src) {
  const double x = -beta * std::log(unit_interval_open_closed(src));
  return Rational(x);
}

}  // namespace detail

// Exact part of refinement consistency: for `cases` values X, with gamma_2 =
// gamma_1 / M, floor_{gamma_1}(floor_{gamma_2}(X)) == floor_{gamma_1}(X), and
// refining a coarse value by any increment < M then coarsening returns it.
inline CheckReport check_refinement_identity(const BigInt& base_denominator,
                                             std::uint32_t refine_factor,
                                             const Rational& beta, std::uint64_t cases,
                                             std::uint64_t seed) {
  CheckReport report;
  report.name = "refinement_identity gamma1=1/" + base_denominator.str() + " M=" +
                std::to_string(refine_factor);
  const Resolution coarse_res(base_denominator, refine_factor);
  const Resolution fine_res = coarse_res.finer();
  SeededBitStream stream = BitSource(seed).stream(0, 0);
  SeededBitStream increments = BitSource(seed).stream(0, 1);
  SamplerStats stats;
  const double b = beta.convert_to<double>();
  std::uint64_t mismatches = 0;
  for (std::uint64_t i = 0; i < cases; ++i) {
    const Rational x = detail::exponential_as_rational(b, stream);
    const ScaledValue coarse(floor(x / coarse_res.gamma()), coarse_res);
    const ScaledValue fine(floor(x / fine_res.gamma()), fine_res);
    const BigInt inc(uniform_below(static_cast<std::uint64_t>(refine_factor), increments, stats));
    const bool ok = coarsen(fine, 0).units() == coarse.units() &&
                    coarsen(coarse.refine(inc), 0).units() == coarse.units() &&
                    coarse.refine(0).value() == coarse.value();
    if (!ok && mismatches++ == 0) report.counterexample = "x=" + to_string(x);
    ++report.cases;
  }
  report.metrics["mismatches"] = static_cast<double>(mismatches);
  report.pass = mismatches == 0;
  return report;
}

// Full refinement consistency: the exact identity above, plus for N
// exponential draws X ~ Exp(beta):
//   - the refinement increment floor_{gamma_2}(X) - floor_{gamma_1}(X), in
//     gamma_2 units, follows the truncated geometric with
//     p = 1 - exp(-gamma_2 / beta);
//   - that increment is independent of the coarse value;
//   - the secure construction (gamma_1 G_0, then + gamma_2 (G_1 mod M)) has
//     the same joint law as the continuous one.
inline CheckReport check_refinement_consistency(const BigInt& base_denominator,
                                                std::uint32_t refine_factor,
                                                const Rational& beta, std::uint64_t n,
                                                std::uint64_t seed,
                                                double alpha = kDefaultAlpha,
                                                std::uint64_t exact_cases = 10'000) {
  CheckReport report = check_refinement_identity(base_denominator, refine_factor, beta,
                                                 exact_cases, seed);
  report.name = "refinement_consistency gamma1=1/" + base_denominator.str() + " M=" +
                std::to_string(refine_factor) + " beta=" + to_string(beta);
  const Resolution coarse_res(base_denominator, refine_factor);
  const Resolution fine_res = coarse_res.finer();
  const double b = beta.convert_to<double>();
  const double theta1 = coarse_res.gamma().convert_to<double>() / b;
  const double theta2 = fine_res.gamma().convert_to<double>() / b;
  // Coarse values >= cap share one row; the cap keeps >= 50 expected per row.
  const auto cap = static_cast<std::uint64_t>(
      std::max(1.0, std::floor(std::log(static_cast<double>(n) / (50.0 * refine_factor)) / theta1)));

  const auto key = [](std::uint64_t row, std::uint64_t inc) {
    return std::to_string(row) + ":" + std::to_string(inc);
  };

  SeededBitStream stream = BitSource(seed).stream(1, 0);
  std::vector<std::uint64_t> inc_counts(refine_factor, 0);
  std::vector<std::vector<std::uint64_t>> table(cap + 1, std::vector<std::uint64_t>(refine_factor, 0));
  EmpiricalDistribution continuous;
  for (std::uint64_t i = 0; i < n; ++i) {
    const Rational x = detail::exponential_as_rational(b, stream);
    const BigInt coarse = floor(x / coarse_res.gamma());
    const BigInt fine = floor(x / fine_res.gamma());
    const auto inc = BigInt(fine - coarse * refine_factor).convert_to<std::uint64_t>();
    const std::uint64_t row = std::min<std::uint64_t>(coarse.convert_to<std::uint64_t>(), cap);
    ++inc_counts[inc];
    ++table[row][inc];
    continuous.add(key(row, inc));
  }

  const double norm = -std::expm1(-theta2 * refine_factor);
  std::vector<double> probs(refine_factor);
  for (std::uint32_t m = 0; m < refine_factor; ++m) probs[m] = detail::geometric_pmf(theta2, m) / norm;
  report.add(chi_square_gof("refinement_increment", inc_counts, probs, alpha));
  report.add(chi_square_independence("increment_independent_of_coarse", table, alpha));

  const BigInt theta_den_num = boost::multiprecision::numerator(beta);
  const BigInt theta_den_den = boost::multiprecision::denominator(beta);
  // theta_t = gamma_t / beta = den(beta) / (num(beta) * d * M^t).
  const GeometricSampler coarse_noise(theta_den_den, theta_den_num * coarse_res.units_per_one());
  const GeometricSampler fine_noise(theta_den_den, theta_den_num * fine_res.units_per_one());
  SeededBitStream g0 = BitSource(seed).stream(2, 0);
  SeededBitStream g1 = BitSource(seed).stream(2, 1);
  SamplerStats stats;
  EmpiricalDistribution secure;
  for (std::uint64_t i = 0; i < n; ++i) {
    const BigInt coarse = coarse_noise(g0, stats);
    const BigInt inc = BigInt(fine_noise(g1, stats) % refine_factor);
    const std::uint64_t row = std::min<std::uint64_t>(coarse.convert_to<std::uint64_t>(), cap);
    secure.add(key(row, inc.convert_to<std::uint64_t>()));
  }
  report.add(chi_square_two_sample("secure_refinement_matches_continuous", continuous, secure, alpha));
  report.metrics["joint_tv"] = tv_distance(continuous, secure);
  report.cases += n;
  return report;
}

// A small instance on which both mechanisms are run repeatedly.
struct EquivalenceFixture {
  std::string name;
  QueryVector queries;  // gamma_* units
  MechanismConfig config;
};

struct EquivalenceReport {
  CheckReport check;
  double tv = 1.0;
  std::uint64_t gap_bucket_width = 1;  // in gamma_* units
  std::vector<std::int64_t> gap_tail_caps;
  std::size_t cells = 0;
  // Counts of the first reported index (1-based position p at entry p - 1).
  std::vector<std::uint64_t> secure_first_index;
  std::vector<std::uint64_t> reference_first_index;
};

namespace detail {

struct Outcome {
  std::vector<std::size_t> indices;
  std::vector<std::int64_t> gaps;
};

inline Outcome to_outcome(const SelectionResult& r) {
  Outcome o;
  for (const auto& pair : r.pairs) {
    o.indices.push_back(pair.index);
    o.gaps.push_back(pair.gap.units.convert_to<std::int64_t>());
  }
  return o;
}

inline std::string outcome_key(const Outcome& o, const std::vector<std::int64_t>& caps,
                               std::uint64_t width) {
  std::ostringstream key;
  for (std::size_t i = 0; i < o.indices.size(); ++i) key << (i ? "," : "") << o.indices[i];
  key << '|';
  for (std::size_t i = 0; i < o.gaps.size(); ++i) {
    key << (i ? "," : "");
    if (o.gaps[i] > caps[i]) {
      key << "tail";
    } else {
      key << o.gaps[i] / static_cast<std::int64_t>(width);
    }
  }
  return key.str();
}

}  // namespace detail

// Runs the secure and the rounded-reference mechanism `runs` times each with
// independent seeds and compares their joint (indices, gaps) distributions.
// Gaps above the pooled 99.9th percentile share one tail cell per
// coordinate; gap buckets are widened (doubling) until at most `max_cells`
// outcome cells remain. Instances with n = k + 1 are run on the secure side
// with one sentinel query appended far enough below the others that its
// selection probability is below exp(-200).
inline EquivalenceReport mechanism_equivalence(const EquivalenceFixture& fixture,
                                               std::uint64_t runs, std::uint64_t seed,
                                               double alpha = kDefaultAlpha,
                                               double tv_threshold = 0.02,
                                               std::size_t max_cells = 200) {
  const std::size_t k = fixture.config.k;
  const std::size_t n = fixture.queries.size();
  EquivalenceReport out;
  out.check.name = "equivalence " + fixture.name;

  QueryVector secure_queries = fixture.queries;
  if (n == k + 1) {
    const BigInt lowest = *std::min_element(fixture.queries.values.begin(),
                                            fixture.queries.values.end());
    const BigInt& eps_num = boost::multiprecision::numerator(fixture.config.epsilon);
    // P(G_0 > L) = exp(-theta_0 (L + 1)) with theta_0 = eps_num / noise_den.
    const BigInt distance = 200 * fixture.config.noise_denominator(0) / eps_num + 1;
    secure_queries.values.push_back(lowest - distance);
    out.check.notes.push_back("secure side padded with a sentinel query " + distance.str() +
                              " gamma_* units below the minimum");
  }

  const std::uint64_t secure_base = detail::mix64(seed ^ 0x5ec0deULL);
  const std::uint64_t reference_base = detail::mix64(seed ^ 0x4ef0ULL);
  std::vector<detail::Outcome> secure_outcomes;
  std::vector<detail::Outcome> reference_outcomes;
  secure_outcomes.reserve(runs);
  reference_outcomes.reserve(runs);
  MechanismConfig cfg = fixture.config;
  for (std::uint64_t r = 0; r < runs; ++r) {
    cfg.seed = secure_base + r;
    secure_outcomes.push_back(detail::to_outcome(secure_top_k_gap(secure_queries, cfg)));
    cfg.seed = reference_base + r;
    reference_outcomes.push_back(detail::to_outcome(rounded_reference_top_k_gap(fixture.queries, cfg)));
  }

  out.secure_first_index.assign(n + 1, 0);
  out.reference_first_index.assign(n, 0);
  for (const auto& o : secure_outcomes) ++out.secure_first_index[o.indices.front() - 1];
  for (const auto& o : reference_outcomes) ++out.reference_first_index[o.indices.front() - 1];
  if (out.secure_first_index.back() == 0) out.secure_first_index.pop_back();

  out.gap_tail_caps.assign(k, 0);
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<std::int64_t> pooled;
    pooled.reserve(2 * runs);
    for (const auto& o : secure_outcomes) pooled.push_back(o.gaps[c]);
    for (const auto& o : reference_outcomes) pooled.push_back(o.gaps[c]);
    const auto at = pooled.begin() + static_cast<std::ptrdiff_t>(
                                          static_cast<double>(pooled.size() - 1) * 0.999);
    std::nth_element(pooled.begin(), at, pooled.end());
    out.gap_tail_caps[c] = *at;
  }

  EmpiricalDistribution secure_dist;
  EmpiricalDistribution reference_dist;
  for (std::uint64_t width = 1;; width *= 2) {
    secure_dist = EmpiricalDistribution{};
    reference_dist = EmpiricalDistribution{};
    for (const auto& o : secure_outcomes) secure_dist.add(detail::outcome_key(o, out.gap_tail_caps, width));
    for (const auto& o : reference_outcomes) {
      reference_dist.add(detail::outcome_key(o, out.gap_tail_caps, width));
    }
    std::map<std::string, int> cells;
    for (const auto& [key, c] : secure_dist.counts()) cells[key] = 1;
    for (const auto& [key, c] : reference_dist.counts()) cells[key] = 1;
    out.cells = cells.size();
    out.gap_bucket_width = width;
    if (out.cells <= max_cells) break;
  }
  if (out.gap_bucket_width > 1) {
    out.check.notes.push_back("gap buckets widened to " + std::to_string(out.gap_bucket_width) +
                              " gamma_* units");
  }

  out.tv = tv_distance(secure_dist, reference_dist);
  out.check.cases = 2 * runs;
  out.check.metrics["tv"] = out.tv;
  out.check.metrics["tv_threshold"] = tv_threshold;
  out.check.metrics["cells"] = static_cast<double>(out.cells);
  out.check.metrics["gap_bucket_width"] = static_cast<double>(out.gap_bucket_width);
  out.check.add(chi_square_two_sample(out.check.name, secure_dist, reference_dist, alpha));

  // Marginals at full gamma_* resolution: the index tuple, and each gap.
  EmpiricalDistribution secure_idx;
  EmpiricalDistribution reference_idx;
  const auto index_key = [](const detail::Outcome& o) {
    std::string key;
    for (std::size_t i : o.indices) key += std::to_string(i) + ",";
    return key;
  };
  for (const auto& o : secure_outcomes) secure_idx.add(index_key(o));
  for (const auto& o : reference_outcomes) reference_idx.add(index_key(o));
  out.check.metrics["index_tv"] = tv_distance(secure_idx, reference_idx);
  out.check.add(chi_square_two_sample("indices " + fixture.name, secure_idx, reference_idx, alpha));
  for (std::size_t c = 0; c < k; ++c) {
    EmpiricalDistribution secure_gap;
    EmpiricalDistribution reference_gap;
    const auto gap_key = [&](const detail::Outcome& o) {
      return o.gaps[c] > out.gap_tail_caps[c] ? std::string("tail") : std::to_string(o.gaps[c]);
    };
    for (const auto& o : secure_outcomes) secure_gap.add(gap_key(o));
    for (const auto& o : reference_outcomes) reference_gap.add(gap_key(o));
    out.check.add(chi_square_two_sample("gap " + std::to_string(c + 1) + " " + fixture.name,
                                        secure_gap, reference_gap, alpha));
  }
  out.check.require(out.tv < tv_threshold, "tv below threshold");
  return out;
}

// The acceptance fixtures for equivalence. Values are given as whole numbers
// and converted to gamma_* units.
inline std::vector<EquivalenceFixture> standard_equivalence_fixtures() {
  const auto make = [](std::string name, std::vector<int> values, std::size_t k,
                       Rational eps, int gamma_den, std::uint32_t m) {
    EquivalenceFixture f;
    f.name = std::move(name);
    for (int v : values) f.queries.values.push_back(BigInt(v) * gamma_den);
    f.config.k = k;
    f.config.epsilon = eps;
    f.config.gamma_denominator = gamma_den;
    f.config.refine_factor = m;
    return f;
  };
  return {
      make("distinct_n5_k2", {4, 3, 2, 1, 0}, 2, Rational(2), 2, 2),
      make("tied_tail_n5_k2", {3, 2, 1, 0, 0}, 2, Rational(2), 2, 2),
      make("equal_n3_k1", {1, 1, 1}, 1, Rational(1), 10, 10),
      make("extreme_gap_n2_k1", {10, 0}, 1, Rational(1), 10, 10),
  };
}

struct SuiteReport {
  std::string suite;
  std::vector<CheckReport> checks;
  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
  }
};

inline SuiteReport run_lemma_suite(std::uint64_t seed = 1) {
  SuiteReport suite{"lemmas", {}};
  const Rational step(1, 100);
  suite.checks.push_back(check_rounding_identity(step, Rational(3), Rational(1, 10)));
  suite.checks.push_back(check_rounding_identity(step, Rational(3), Rational(1, 20)));
  const Rational fine_step(1, 40);
  suite.checks.push_back(check_rounddown_sensitivity(Rational(1), Rational(1, 10), fine_step, Rational(3)));
  suite.checks.push_back(check_rounddown_sensitivity(Rational(1), Rational(1, 4), fine_step, Rational(3)));
  suite.checks.push_back(check_refinement_identity(BigInt(10), 10, Rational(2), 10'000, seed));
  return suite;
}

namespace detail {

inline CheckReport bernoulli_mean_check(std::string name, std::uint64_t n, double p,
                                        const std::function<bool()>& draw) {
  CheckReport report;
  report.name = std::move(name);
  std::uint64_t ones = 0;
  for (std::uint64_t i = 0; i < n; ++i) ones += draw() ? 1 : 0;
  const double mean = static_cast<double>(ones) / static_cast<double>(n);
  report.cases = n;
  report.metrics["mean"] = mean;
  report.metrics["expected"] = p;
  report.require(within_three_sigma(mean, p, n), "mean within 3 sigma");
  return report;
}

}  // namespace detail

// Uniform, Bernoulli, geometric and shuffle primitives against their exact
// laws.
inline SuiteReport run_primitive_sampler_suite(std::uint64_t seed = 1, std::uint64_t n = 300'000) {
  SuiteReport suite{"samplers", {}};
  const BitSource source(seed);
  SamplerStats stats;

  {
    CheckReport r;
    r.name = "uniform_below bound=6";
    SeededBitStream s = source.stream(0, 10);
    std::vector<std::uint64_t> counts(6, 0);
    for (std::uint64_t i = 0; i < 2 * n; ++i) ++counts[uniform_below(std::uint64_t{6}, s, stats)];
    r.cases = 2 * n;
    r.add(chi_square_gof(r.name, counts, std::vector<double>(6, 1.0 / 6.0)));
    suite.checks.push_back(r);
  }
  {
    SeededBitStream s = source.stream(0, 11);
    suite.checks.push_back(detail::bernoulli_mean_check(
        "bernoulli_rational 1/3", n, 1.0 / 3.0,
        [&] { return bernoulli_rational(std::uint64_t{1}, std::uint64_t{3}, s, stats); }));
  }
  for (auto [num, den] : {std::pair{1, 1}, std::pair{3, 2}}) {
    SeededBitStream s = source.stream(0, 12 + static_cast<std::uint64_t>(num));
    suite.checks.push_back(detail::bernoulli_mean_check(
        "bernoulli_exp_neg " + std::to_string(num) + "/" + std::to_string(den), n,
        std::exp(-static_cast<double>(num) / den), [&, num = num, den = den] {
          return bernoulli_exp_neg(static_cast<std::uint64_t>(num),
                                   static_cast<std::uint64_t>(den), s, stats);
        }));
  }
  {
    // exp(-1/2) drawn as 1/2 and as the unreduced 2/4 must agree.
    CheckReport r;
    r.name = "bernoulli_exp_neg scale invariance 1/2 vs 2/4";
    SeededBitStream a = source.stream(0, 20);
    SeededBitStream b = source.stream(0, 21);
    EmpiricalDistribution da;
    EmpiricalDistribution db;
    for (std::uint64_t i = 0; i < n; ++i) {
      da.add(bernoulli_exp_neg(BigInt(1), BigInt(2), a, stats) ? "1" : "0");
      db.add(bernoulli_exp_neg(BigInt(2), BigInt(4), b, stats) ? "1" : "0");
    }
    r.cases = 2 * n;
    r.add(chi_square_two_sample(r.name, da, db));
    suite.checks.push_back(r);
  }
  for (auto [s_, t_] : {std::pair{1, 1}, std::pair{1, 10}, std::pair{1, 40}, std::pair{3, 2}}) {
    CheckReport r;
    r.name = "geometric " + std::to_string(s_) + "/" + std::to_string(t_);
    const GeometricSampler sampler{BigInt(s_), BigInt(t_)};
    SeededBitStream s = source.stream(static_cast<std::uint64_t>(s_), static_cast<std::uint64_t>(100 + t_));
    std::vector<std::uint64_t> samples(n);
    for (auto& x : samples) x = sampler(s, stats).convert_to<std::uint64_t>();
    const double th = static_cast<double>(s_) / t_;
    r.cases = n;
    r.add(chi_square_gof_integer(r.name, std::span<const std::uint64_t>(samples),
                                 [th](std::uint64_t m) { return detail::geometric_pmf(th, m); }));
    suite.checks.push_back(r);
  }
  {
    CheckReport r;
    r.name = "shuffle n=3";
    SeededBitStream s = source.stream(0, 30);
    std::map<std::string, std::uint64_t> seen;
    const std::uint64_t shuffles = 120'000;
    for (std::uint64_t i = 0; i < shuffles; ++i) {
      std::vector<int> items{1, 2, 3};
      shuffle(std::span<int>(items), s, stats);
      ++seen[std::to_string(items[0]) + std::to_string(items[1]) + std::to_string(items[2])];
    }
    std::vector<std::uint64_t> counts;
    for (const auto& [perm, c] : seen) counts.push_back(c);
    r.cases = shuffles;
    r.require(counts.size() == 6, "all 6 orderings observed");
    counts.resize(6, 0);
    r.add(chi_square_gof(r.name, counts, std::vector<double>(6, 1.0 / 6.0)));
    suite.checks.push_back(r);
  }
  return suite;
}

// Scaled geometric, truncated geometric and refinement consistency with the
// acceptance parameters (beta = 2, gamma_1 = 1/10, M = 10).
inline SuiteReport run_noise_law_suite(std::uint64_t seed = 1, std::uint64_t n = 300'000) {
  SuiteReport suite{"samplers", {}};
  suite.checks.push_back(check_scaled_geometric(Rational(2), Rational(1, 10), n, seed + 1));
  suite.checks.push_back(check_truncated_geometric(BigInt(1), BigInt(20), 10, n, seed + 2));
  suite.checks.push_back(check_refinement_consistency(BigInt(10), 10, Rational(2), n, seed + 3));
  return suite;
}

inline SuiteReport run_sampler_suite(std::uint64_t seed = 1, std::uint64_t n = 300'000) {
  SuiteReport suite = run_primitive_sampler_suite(seed, n);
  for (auto& c : run_noise_law_suite(seed, n).checks) suite.checks.push_back(std::move(c));
  return suite;
}

inline SuiteReport run_equivalence_suite(std::uint64_t seed = 1, std::uint64_t runs = 200'000) {
  SuiteReport suite{"equivalence", {}};
  for (const auto& fixture : standard_equivalence_fixtures()) {
    auto report = mechanism_equivalence(fixture, runs, seed);
    suite.checks.push_back(std::move(report.check));
  }
  return suite;
}

}  // namespace securegap

#endif  // SECUREGAP_VERIFICATION_HPP_
