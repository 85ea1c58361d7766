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

// Transaction datasets: one transaction per line, whitespace-separated item
// tokens. Each item becomes one counting query (number of transactions that
// contain it), which has sensitivity 1 under add/remove-one-transaction.

#ifndef SECUREGAP_DATASET_HPP_
#define SECUREGAP_DATASET_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "securegap/errors.hpp"
#include "securegap/mechanism.hpp"
#include "securegap/rational.hpp"

namespace securegap {

struct TransactionDataset {
  std::string path;
  std::uint64_t n_records = 0;
  // Column order is first appearance in the file.
  std::vector<std::string> items;
  std::unordered_map<std::string, std::size_t> item_index;
  std::vector<std::uint64_t> counts;

  std::size_t unique_items() const { return items.size(); }
};

namespace detail {

// Structurally valid UTF-8 without control characters (tab and CR allowed).
inline bool valid_line(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size()) {
    const auto c = static_cast<unsigned char>(line[i]);
    if (c < 0x80) {
      if (c < 0x20 && c != '\t' && c != '\r') return false;
      if (c == 0x7f) return false;
      ++i;
      continue;
    }
    std::size_t extra = 0;
    if ((c & 0xe0) == 0xc0 && c >= 0xc2) {
      extra = 1;
    } else if ((c & 0xf0) == 0xe0) {
      extra = 2;
    } else if ((c & 0xf8) == 0xf0 && c <= 0xf4) {
      extra = 3;
    } else {
      return false;
    }
    if (i + extra >= line.size()) return false;
    for (std::size_t j = 1; j <= extra; ++j) {
      if ((static_cast<unsigned char>(line[i + j]) & 0xc0) != 0x80) return false;
    }
    i += extra + 1;
  }
  return true;
}

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

}  // namespace detail

// Reads a transaction file. Blank lines are skipped and do not count as
// records; an item repeated within one transaction counts once.
inline TransactionDataset ingest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open dataset \"" + path + "\"");
  TransactionDataset data;
  data.path = path;
  std::string line;
  std::uint64_t line_no = 0;
  std::unordered_set<std::size_t> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (!detail::valid_line(line)) {
      throw InvalidArgument(path + ":" + std::to_string(line_no) +
                            ": malformed line (invalid UTF-8 or control character)");
    }
    seen.clear();
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && detail::is_space(line[pos])) ++pos;
      std::size_t end = pos;
      while (end < line.size() && !detail::is_space(line[end])) ++end;
      if (end == pos) break;
      std::string token = line.substr(pos, end - pos);
      pos = end;
      auto [it, inserted] = data.item_index.try_emplace(token, data.items.size());
      if (inserted) {
        data.items.push_back(std::move(token));
        data.counts.push_back(0);
      }
      if (seen.insert(it->second).second) ++data.counts[it->second];
    }
    if (!seen.empty()) ++data.n_records;
  }
  if (in.bad()) throw IoError("read error on \"" + path + "\"");
  if (data.n_records == 0) throw InvalidArgument("dataset \"" + path + "\" has no transactions");
  return data;
}

// Integer counts to gamma_* units (count * d); exact, no rounding needed.
inline QueryVector to_query_vector(std::span<const std::uint64_t> counts,
                                   const BigInt& gamma_denominator) {
  QueryVector q;
  q.values.reserve(counts.size());
  for (auto c : counts) q.values.push_back(BigInt(c) * gamma_denominator);
  return q;
}

// Arbitrary rational answers rounded down onto the gamma_* grid, in gamma_*
// units: floor(x * d).
inline QueryVector round_down_queries(std::span<const Rational> answers,
                                      const BigInt& gamma_denominator) {
  QueryVector q;
  q.values.reserve(answers.size());
  for (const auto& x : answers) q.values.push_back(floor(x * Rational(gamma_denominator)));
  return q;
}

// Zipf-shaped item frequencies: count_i = max(1, floor(records / i^skew)),
// i = 1..n_items.
inline std::vector<std::uint64_t> zipf_counts(std::size_t n_items, std::uint64_t records,
                                              double skew) {
  if (n_items == 0 || records == 0) throw InvalidArgument("zipf_counts: empty dataset");
  std::vector<std::uint64_t> counts(n_items);
  for (std::size_t i = 0; i < n_items; ++i) {
    const double c = std::floor(static_cast<double>(records) /
                                std::pow(static_cast<double>(i + 1), skew));
    counts[i] = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(c));
  }
  return counts;
}

// Writes a synthetic transaction file whose item frequencies are exactly
// zipf_counts(n_items, records, skew): item i is placed in count_i distinct
// transactions chosen uniformly at random. Tokens are "i<rank>". Records
// that receive no item are omitted, so the file may hold fewer than
// `records` lines.
inline void write_synthetic_dataset(const std::string& path, std::size_t n_items,
                                    std::uint64_t records, double skew, std::uint64_t seed) {
  const auto counts = zipf_counts(n_items, records, skew);
  std::mt19937_64 engine(seed);
  std::vector<std::vector<std::uint32_t>> transactions(records);
  std::unordered_set<std::uint64_t> chosen;
  for (std::size_t item = 0; item < n_items; ++item) {
    // Floyd's algorithm: counts[item] distinct records out of `records`.
    chosen.clear();
    for (std::uint64_t j = records - counts[item]; j < records; ++j) {
      const std::uint64_t r = std::uniform_int_distribution<std::uint64_t>(0, j)(engine);
      if (!chosen.insert(r).second) chosen.insert(j);
    }
    for (auto r : chosen) transactions[r].push_back(static_cast<std::uint32_t>(item));
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write \"" + path + "\"");
  for (auto& t : transactions) {
    if (t.empty()) continue;
    std::sort(t.begin(), t.end());
    for (std::size_t i = 0; i < t.size(); ++i) out << (i ? " " : "") << 'i' << (t[i] + 1);
    out << '\n';
  }
  if (!out) throw IoError("write error on \"" + path + "\"");
}

}  // namespace securegap

#endif  // SECUREGAP_DATASET_HPP_
