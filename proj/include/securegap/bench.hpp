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

// Timing harness: mean wall time per (k, variant), the three-phase breakdown
// and sampler-invocation counts for the secure variants.

#ifndef SECUREGAP_BENCH_HPP_
#define SECUREGAP_BENCH_HPP_

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "securegap/bit_source.hpp"
#include "securegap/errors.hpp"
#include "securegap/mechanism.hpp"

namespace securegap {

enum class Variant {
  kSecure,            // exact, no pruning
  kOptimizedSecure,   // exact, early query pruning
  kRoundedReference,  // floating-point oracle
  kIdealBaseline,     // floating-point, unrounded
};

inline std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::kSecure: return "secure";
    case Variant::kOptimizedSecure: return "opt-secure";
    case Variant::kRoundedReference: return "rounded-reference";
    case Variant::kIdealBaseline: return "ideal-baseline";
  }
  return "unknown";
}

inline Variant parse_variant(std::string_view name) {
  for (Variant v : {Variant::kSecure, Variant::kOptimizedSecure, Variant::kRoundedReference,
                    Variant::kIdealBaseline}) {
    if (variant_name(v) == name) return v;
  }
  throw InvalidArgument("unknown variant \"" + std::string(name) + "\"");
}

inline bool is_secure(Variant v) {
  return v == Variant::kSecure || v == Variant::kOptimizedSecure;
}

struct BenchCase {
  std::string dataset;
  std::size_t n = 0;
  std::size_t k = 0;
  Variant variant = Variant::kOptimizedSecure;
  std::uint64_t trials = 0;
  double mean_ms = 0.0;
  double stddev_ms = 0.0;
  // Secure variants only.
  double initial_selection_ms = 0.0;
  double tie_resolution_ms = 0.0;
  double gap_computation_ms = 0.0;
  double mean_geometric_calls = 0.0;
  double mean_bernoulli_calls = 0.0;
  double mean_uniform_calls = 0.0;
  std::map<std::uint32_t, std::uint64_t> refine_level_histogram;
  // Runs where geometric calls != n + sum of per-round refined counts.
  std::uint64_t count_identity_violations = 0;
};

struct BenchReport {
  std::vector<BenchCase> cases;
};

struct BenchConfig {
  std::vector<std::size_t> ks{25};
  std::uint64_t trials = 100;
  std::vector<Variant> variants{Variant::kSecure, Variant::kOptimizedSecure,
                                Variant::kIdealBaseline};
  // k, prune and seed are overridden per case; seed is the master seed.
  MechanismConfig mechanism;
};

// Trial t of every case uses the same derived seed.
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
  return detail::mix64(master ^ detail::mix64(trial + 1));
}

inline BenchCase bench_case(const std::string& dataset, const QueryVector& q, std::size_t k,
                            Variant variant, const BenchConfig& config) {
  if (config.trials < 1) throw InvalidArgument("bench: trials must be >= 1");
  using Ms = std::chrono::duration<double, std::milli>;
  BenchCase out;
  out.dataset = dataset;
  out.n = q.size();
  out.k = k;
  out.variant = variant;
  out.trials = config.trials;
  MechanismConfig cfg = config.mechanism;
  cfg.k = k;
  cfg.prune = variant == Variant::kOptimizedSecure;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t t = 0; t < config.trials; ++t) {
    cfg.seed = trial_seed(config.mechanism.seed, t);
    double ms = 0.0;
    if (is_secure(variant)) {
      const SelectionResult r = secure_top_k_gap(q, cfg);
      ms = Ms(r.phases.total()).count();
      out.initial_selection_ms += Ms(r.phases.initial_selection).count();
      out.tie_resolution_ms += Ms(r.phases.tie_resolution).count();
      out.gap_computation_ms += Ms(r.phases.gap_computation).count();
      out.mean_geometric_calls += static_cast<double>(r.stats.geometric_calls);
      out.mean_bernoulli_calls += static_cast<double>(r.stats.bernoulli_calls);
      out.mean_uniform_calls += static_cast<double>(r.stats.uniform_calls);
      ++out.refine_level_histogram[r.refine_levels];
      std::uint64_t expected = q.size();
      for (auto c : r.refined_per_round) expected += c;
      if (expected != r.stats.geometric_calls) ++out.count_identity_violations;
    } else if (variant == Variant::kRoundedReference) {
      ms = Ms(rounded_reference_top_k_gap(q, cfg).phases.total()).count();
    } else {
      ms = Ms(ideal_baseline_top_k_gap(q, cfg).elapsed).count();
    }
    sum += ms;
    sum_sq += ms * ms;
  }
  const auto n = static_cast<double>(config.trials);
  out.mean_ms = sum / n;
  out.stddev_ms = config.trials > 1 ? std::sqrt(std::max(0.0, (sum_sq - sum * sum / n) / (n - 1)))
                                    : 0.0;
  out.initial_selection_ms /= n;
  out.tie_resolution_ms /= n;
  out.gap_computation_ms /= n;
  out.mean_geometric_calls /= n;
  out.mean_bernoulli_calls /= n;
  out.mean_uniform_calls /= n;
  return out;
}

inline BenchReport bench(const std::string& dataset, const QueryVector& q,
                         const BenchConfig& config) {
  BenchReport report;
  for (std::size_t k : config.ks) {
    for (Variant v : config.variants) report.cases.push_back(bench_case(dataset, q, k, v, config));
  }
  return report;
}

inline std::string format_table(const BenchReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(16) << "dataset" << std::right << std::setw(8) << "n"
      << std::setw(6) << "k" << "  " << std::left << std::setw(18) << "variant" << std::right
      << std::setw(11) << "mean_ms" << std::setw(10) << "sd_ms" << std::setw(11) << "topk_ms"
      << std::setw(11) << "ties_ms" << std::setw(10) << "gaps_ms" << std::setw(11) << "geom/run"
      << std::setw(10) << "bern/geo" << std::setw(10) << "unif/geo" << '\n';
  out << std::fixed;
  for (const auto& c : report.cases) {
    out << std::left << std::setw(16) << c.dataset << std::right << std::setw(8) << c.n
        << std::setw(6) << c.k << "  " << std::left << std::setw(18) << variant_name(c.variant)
        << std::right << std::setprecision(4) << std::setw(11) << c.mean_ms << std::setw(10)
        << c.stddev_ms;
    if (is_secure(c.variant)) {
      const double geo = c.mean_geometric_calls > 0 ? c.mean_geometric_calls : 1.0;
      out << std::setw(11) << c.initial_selection_ms << std::setw(11) << c.tie_resolution_ms
          << std::setw(10) << c.gap_computation_ms << std::setprecision(1) << std::setw(11)
          << c.mean_geometric_calls << std::setprecision(2) << std::setw(10)
          << c.mean_bernoulli_calls / geo << std::setw(10) << c.mean_uniform_calls / geo;
    } else {
      out << std::setw(11) << "-" << std::setw(11) << "-" << std::setw(10) << "-" << std::setw(11)
          << "-" << std::setw(10) << "-" << std::setw(10) << "-";
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace securegap

#endif  // SECUREGAP_BENCH_HPP_
