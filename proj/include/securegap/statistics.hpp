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

// Goodness-of-fit machinery for the verification suites. Floating point is
// fine here: these are test statistics, never mechanism state.

#ifndef SECUREGAP_STATISTICS_HPP_
#define SECUREGAP_STATISTICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "securegap/errors.hpp"

namespace securegap {

inline constexpr double kDefaultAlpha = 0.001;

struct GofReport {
  std::string name;
  double statistic = 0.0;
  double p_value = 1.0;
  int dof = 0;
  double alpha = kDefaultAlpha;
  bool pass = true;  // p_value > alpha
};

// Upper tail of the chi-square distribution.
inline double chi_square_sf(double statistic, int dof) {
  if (dof <= 0) return 1.0;
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * statistic);
}

inline GofReport make_report(std::string name, double statistic, int dof, double alpha) {
  GofReport r;
  r.name = std::move(name);
  r.statistic = statistic;
  r.dof = dof;
  r.alpha = alpha;
  r.p_value = chi_square_sf(statistic, dof);
  r.pass = r.p_value > alpha;
  return r;
}

// Pearson goodness of fit of `observed` against `probabilities` over the same
// cells; the probabilities must sum to 1. Adjacent cells are merged left to
// right until every expected count is at least `min_expected`.
inline GofReport chi_square_gof(std::string name, std::span<const std::uint64_t> observed,
                                std::span<const double> probabilities,
                                double alpha = kDefaultAlpha, double min_expected = 5.0) {
  if (observed.size() != probabilities.size()) {
    throw InvalidArgument("chi_square_gof: size mismatch");
  }
  double total = 0.0;
  double covered = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    total += static_cast<double>(observed[i]);
    covered += probabilities[i];
  }
  if (std::abs(covered - 1.0) > 1e-9) {
    throw InvalidArgument("chi_square_gof: probabilities must sum to 1");
  }
  std::vector<double> obs(observed.begin(), observed.end());
  std::vector<double> exp;
  for (double p : probabilities) exp.push_back(p * total);
  std::vector<double> cell_obs;
  std::vector<double> cell_exp;
  double acc_o = 0.0;
  double acc_e = 0.0;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    acc_o += obs[i];
    acc_e += exp[i];
    if (acc_e >= min_expected) {
      cell_obs.push_back(acc_o);
      cell_exp.push_back(acc_e);
      acc_o = acc_e = 0.0;
    }
  }
  if (acc_e > 0.0 || acc_o > 0.0) {
    if (cell_exp.empty()) {
      cell_obs.push_back(acc_o);
      cell_exp.push_back(acc_e);
    } else {
      cell_obs.back() += acc_o;
      cell_exp.back() += acc_e;
    }
  }
  double stat = 0.0;
  for (std::size_t i = 0; i < cell_exp.size(); ++i) {
    if (cell_exp[i] <= 0.0) {
      if (cell_obs[i] > 0.0) stat = INFINITY;
      continue;
    }
    const double diff = cell_obs[i] - cell_exp[i];
    stat += diff * diff / cell_exp[i];
  }
  return make_report(std::move(name), stat, static_cast<int>(cell_exp.size()) - 1, alpha);
}

// Goodness of fit for samples on {0, 1, 2, ...}: `pmf(m)` is evaluated for
// m = 0 .. max_observed, and the remaining mass is pooled into the last cell.
template <typename Pmf>
GofReport chi_square_gof_integer(std::string name, std::span<const std::uint64_t> samples,
                                 Pmf pmf, double alpha = kDefaultAlpha) {
  std::uint64_t max_seen = 0;
  for (auto s : samples) max_seen = std::max(max_seen, s);
  std::vector<std::uint64_t> counts(max_seen + 1, 0);
  for (auto s : samples) ++counts[s];
  std::vector<double> probs(max_seen + 1);
  double covered = 0.0;
  for (std::uint64_t m = 0; m <= max_seen; ++m) {
    probs[m] = pmf(m);
    covered += probs[m];
  }
  // Fold the unobserved tail into the last cell: P(X >= max_seen).
  probs[max_seen] += std::max(0.0, 1.0 - covered);
  return chi_square_gof(std::move(name), counts, probs, alpha);
}

// Pearson test of independence on a contingency table (rows x cols). Rows
// and columns with zero marginals are dropped.
inline GofReport chi_square_independence(std::string name,
                                         const std::vector<std::vector<std::uint64_t>>& table,
                                         double alpha = kDefaultAlpha) {
  const std::size_t rows = table.size();
  const std::size_t cols = rows == 0 ? 0 : table.front().size();
  std::vector<double> row_sum(rows, 0.0);
  std::vector<double> col_sum(cols, 0.0);
  double total = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    if (table[r].size() != cols) throw InvalidArgument("chi_square_independence: ragged table");
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = static_cast<double>(table[r][c]);
      row_sum[r] += v;
      col_sum[c] += v;
      total += v;
    }
  }
  double stat = 0.0;
  int live_rows = 0;
  int live_cols = 0;
  for (double v : row_sum) live_rows += v > 0.0;
  for (double v : col_sum) live_cols += v > 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    if (row_sum[r] == 0.0) continue;
    for (std::size_t c = 0; c < cols; ++c) {
      if (col_sum[c] == 0.0) continue;
      const double expected = row_sum[r] * col_sum[c] / total;
      const double diff = static_cast<double>(table[r][c]) - expected;
      stat += diff * diff / expected;
    }
  }
  const int dof = std::max(0, (live_rows - 1) * (live_cols - 1));
  return make_report(std::move(name), stat, dof, alpha);
}

// Counts over opaque outcome keys.
class EmpiricalDistribution {
 public:
  void add(const std::string& key, std::uint64_t count = 1) {
    counts_[key] += count;
    total_ += count;
  }
  std::uint64_t count(const std::string& key) const {
    auto it = counts_.find(key);
    return it == counts_.end() ? 0 : it->second;
  }
  double probability(const std::string& key) const {
    return total_ == 0 ? 0.0 : static_cast<double>(count(key)) / static_cast<double>(total_);
  }
  std::uint64_t total() const { return total_; }
  const std::map<std::string, std::uint64_t>& counts() const { return counts_; }
  std::size_t cells() const { return counts_.size(); }

 private:
  std::map<std::string, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

// Total variation distance between two empirical distributions.
inline double tv_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  double sum = 0.0;
  for (const auto& [key, count] : a.counts()) sum += std::abs(a.probability(key) - b.probability(key));
  for (const auto& [key, count] : b.counts()) {
    if (a.count(key) == 0) sum += b.probability(key);
  }
  return 0.5 * sum;
}

// Two-sample chi-square homogeneity test. Cells whose pooled count is below
// `min_pooled` are merged into one residual cell.
inline GofReport chi_square_two_sample(std::string name, const EmpiricalDistribution& a,
                                       const EmpiricalDistribution& b,
                                       double alpha = kDefaultAlpha,
                                       std::uint64_t min_pooled = 20) {
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> joint;
  for (const auto& [key, count] : a.counts()) joint[key].first = count;
  for (const auto& [key, count] : b.counts()) joint[key].second = count;
  std::vector<std::vector<std::uint64_t>> table;
  std::vector<std::uint64_t> residual(2, 0);
  for (const auto& [key, pair] : joint) {
    if (pair.first + pair.second < min_pooled) {
      residual[0] += pair.first;
      residual[1] += pair.second;
    } else {
      table.push_back({pair.first, pair.second});
    }
  }
  if (residual[0] + residual[1] > 0) table.push_back(residual);
  return chi_square_independence(std::move(name), table, alpha);
}

// |observed mean - expected| <= 3 sigma for a Bernoulli(p) sample of size n.
inline bool within_three_sigma(double observed_mean, double p, std::uint64_t n) {
  const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  return std::abs(observed_mean - p) <= 3.0 * sigma;
}

}  // namespace securegap

#endif  // SECUREGAP_STATISTICS_HPP_
