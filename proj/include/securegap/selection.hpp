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

#ifndef SECUREGAP_SELECTION_HPP_
#define SECUREGAP_SELECTION_HPP_

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "securegap/errors.hpp"

namespace securegap {

// Positions (0-based) of the m largest values, largest first. Equal values
// are ordered by ascending position.
template <typename T>
std::vector<std::size_t> select_top(std::span<const T> values, std::size_t m) {
  if (m > values.size()) throw InvalidArgument("select_top: m exceeds number of values");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto before = [&values](std::size_t a, std::size_t b) {
    if (values[a] < values[b]) return false;
    if (values[b] < values[a]) return true;
    return a < b;
  };
  if (m < order.size()) {
    std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m),
                     order.end(), before);
    order.resize(m);
  }
  std::sort(order.begin(), order.end(), before);
  return order;
}

// True iff two of `selected` are equal.
template <typename T>
bool has_tie(std::span<const T> selected) {
  bool descending = true;
  for (std::size_t i = 1; i < selected.size(); ++i) {
    if (selected[i - 1] < selected[i]) {
      descending = false;
      break;
    }
  }
  if (descending) {
    for (std::size_t i = 1; i < selected.size(); ++i) {
      if (!(selected[i] < selected[i - 1])) return true;
    }
    return false;
  }
  std::vector<const T*> sorted;
  sorted.reserve(selected.size());
  for (const T& v : selected) sorted.push_back(&v);
  std::sort(sorted.begin(), sorted.end(), [](const T* a, const T* b) { return *a < *b; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (!(*sorted[i - 1] < *sorted[i])) return true;
  }
  return false;
}

// Positions whose value is >= `threshold`, ascending.
template <typename T>
std::vector<std::size_t> pool_at_or_above(std::span<const T> values, const T& threshold) {
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] < threshold)) pool.push_back(i);
  }
  return pool;
}

// Queries that can still influence the top k+1 and their gaps: every value
// at or above the (k+2)-th largest (counted with multiplicity). A value
// strictly below that threshold stays strictly below it at every finer
// resolution, so it can never re-enter the selection.
template <typename T>
std::vector<std::size_t> prune_pool(std::span<const T> values, std::size_t k) {
  const std::size_t keep = k + 2;
  if (values.size() <= keep) {
    std::vector<std::size_t> all(values.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return all;
  }
  const auto top = select_top(values, keep);
  return pool_at_or_above(values, values[top.back()]);
}

}  // namespace securegap

#endif  // SECUREGAP_SELECTION_HPP_
