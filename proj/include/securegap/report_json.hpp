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

// JSON encodings used by the command-line tool.
//
// Run output:
//   {"variant": str, "k": int, "epsilon": "num/den", "gamma_star": "1/d",
//    "refine_factor": int, "seed": int, "prune": bool,
//    "indices": [int, ...],           1-based query positions, best first
//    "items": [str, ...],             present when queries came from a dataset
//    "gaps": [str, ...],              exact; see format_gap
//    "refine_levels": int,
//    "sampler_stats": {"geometric": int, "bernoulli": int, "uniform": int},
//    "phase_ms": {"initial_selection": num, "tie_resolution": num,
//                 "gap_computation": num, "total": num}}
//
// For the ideal baseline the gaps are unrounded binary doubles, written as
// the shortest decimal string that parses back to the same double.

#ifndef SECUREGAP_REPORT_JSON_HPP_
#define SECUREGAP_REPORT_JSON_HPP_

#include <charconv>
#include <chrono>
#include <string>
#include <vector>

#include "json.hpp"
#include "securegap/bench.hpp"
#include "securegap/mechanism.hpp"
#include "securegap/verification.hpp"

namespace securegap {

using Json = nlohmann::ordered_json;

namespace detail {

inline double to_ms(std::chrono::nanoseconds d) {
  return std::chrono::duration<double, std::milli>(d).count();
}

inline std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline Json config_json(std::string_view variant, const MechanismConfig& cfg) {
  Json j;
  j["variant"] = variant;
  j["k"] = cfg.k;
  j["epsilon"] = to_string(cfg.epsilon);
  j["gamma_star"] = "1/" + cfg.gamma_denominator.str();
  j["refine_factor"] = cfg.refine_factor;
  j["seed"] = cfg.seed;
  j["prune"] = cfg.prune;
  return j;
}

inline void add_items(Json& j, const std::vector<std::size_t>& indices,
                      const std::vector<std::string>* items) {
  if (items == nullptr) return;
  Json names = Json::array();
  for (std::size_t i : indices) names.push_back((*items)[i - 1]);
  j["items"] = std::move(names);
}

}  // namespace detail

inline Json to_json(const SamplerStats& s) {
  return Json{{"geometric", s.geometric_calls},
              {"bernoulli", s.bernoulli_calls},
              {"uniform", s.uniform_calls}};
}

inline Json run_json(std::string_view variant, const MechanismConfig& cfg,
                     const SelectionResult& r,
                     const std::vector<std::string>* items = nullptr) {
  Json j = detail::config_json(variant, cfg);
  std::vector<std::size_t> indices;
  Json gaps = Json::array();
  for (const auto& p : r.pairs) {
    indices.push_back(p.index);
    gaps.push_back(format_gap(p.gap, cfg.gamma_denominator));
  }
  j["indices"] = indices;
  detail::add_items(j, indices, items);
  j["gaps"] = std::move(gaps);
  j["refine_levels"] = r.refine_levels;
  j["sampler_stats"] = to_json(r.stats);
  j["phase_ms"] = Json{{"initial_selection", detail::to_ms(r.phases.initial_selection)},
                       {"tie_resolution", detail::to_ms(r.phases.tie_resolution)},
                       {"gap_computation", detail::to_ms(r.phases.gap_computation)},
                       {"total", detail::to_ms(r.phases.total())}};
  return j;
}

inline Json run_json(const MechanismConfig& cfg, const IdealSelectionResult& r,
                     const std::vector<std::string>* items = nullptr) {
  Json j = detail::config_json(variant_name(Variant::kIdealBaseline), cfg);
  j["indices"] = r.indices;
  detail::add_items(j, r.indices, items);
  Json gaps = Json::array();
  for (double g : r.gaps) gaps.push_back(detail::shortest(g));
  j["gaps"] = std::move(gaps);
  j["refine_levels"] = 0;
  j["sampler_stats"] = nullptr;
  j["phase_ms"] = Json{{"total", detail::to_ms(r.elapsed)}};
  return j;
}

inline Json to_json(const GofReport& r) {
  return Json{{"name", r.name},       {"statistic", r.statistic}, {"p_value", r.p_value},
              {"dof", r.dof},         {"alpha", r.alpha},         {"pass", r.pass}};
}

inline Json to_json(const CheckReport& c) {
  Json j{{"name", c.name}, {"pass", c.pass}, {"cases", c.cases}};
  if (!c.counterexample.empty()) j["counterexample"] = c.counterexample;
  Json tests = Json::array();
  for (const auto& t : c.tests) tests.push_back(to_json(t));
  j["tests"] = std::move(tests);
  j["metrics"] = Json::object();
  for (const auto& [k, v] : c.metrics) j["metrics"][k] = v;
  j["notes"] = c.notes;
  return j;
}

inline Json to_json(const SuiteReport& s) {
  Json checks = Json::array();
  for (const auto& c : s.checks) checks.push_back(to_json(c));
  return Json{{"suite", s.suite}, {"pass", s.pass()}, {"checks", std::move(checks)}};
}

inline Json to_json(const BenchCase& c) {
  Json j{{"dataset", c.dataset}, {"n", c.n},           {"k", c.k},
         {"variant", variant_name(c.variant)},           {"trials", c.trials},
         {"mean_ms", c.mean_ms}, {"stddev_ms", c.stddev_ms}};
  if (is_secure(c.variant)) {
    j["phase_ms"] = Json{{"initial_selection", c.initial_selection_ms},
                         {"tie_resolution", c.tie_resolution_ms},
                         {"gap_computation", c.gap_computation_ms}};
    j["sampler_calls_per_run"] = Json{{"geometric", c.mean_geometric_calls},
                                      {"bernoulli", c.mean_bernoulli_calls},
                                      {"uniform", c.mean_uniform_calls}};
    Json hist = Json::object();
    for (const auto& [level, count] : c.refine_level_histogram) hist[std::to_string(level)] = count;
    j["refine_level_histogram"] = std::move(hist);
    j["count_identity_violations"] = c.count_identity_violations;
  }
  return j;
}

inline Json to_json(const BenchReport& r) {
  Json cases = Json::array();
  for (const auto& c : r.cases) cases.push_back(to_json(c));
  return Json{{"cases", std::move(cases)}};
}

}  // namespace securegap

#endif  // SECUREGAP_REPORT_JSON_HPP_
