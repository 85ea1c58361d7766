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

// securegap: command-line front end.
//
//   securegap run     --dataset FILE | --queries 5,3,2.5,...  [options]
//   securegap bench   --dataset FILE | --synthetic-n N         [options]
//   securegap verify  lemmas|samplers|equivalence|all
//   securegap ingest  --dataset FILE
//   securegap synth   --output FILE --n N --records R --skew S
//
// Reported indices are 1-based. Exit status: 0 ok, 1 usage, 2 verification
// failure, 3 I/O.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "securegap/report_json.hpp"
#include "securegap/securegap.hpp"

namespace {

using securegap::BigInt;
using securegap::Json;
using securegap::Rational;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;
constexpr int kExitIo = 3;

struct CommonOptions {
  std::string eps = "1/1";
  std::string gamma = "1/10";
  std::uint32_t refine_factor = 10;
  std::uint64_t seed = 0;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--eps", o.eps, "privacy budget as an exact fraction num/den")
      ->capture_default_str();
  cmd->add_option("--gamma", o.gamma, "grid step gamma_* = 1/d")->capture_default_str();
  cmd->add_option("--refine-factor", o.refine_factor, "precision increment factor M")
      ->capture_default_str()
      ->check(CLI::Range(2u, 1u << 20));
  cmd->add_option("--seed", o.seed, "master seed")->capture_default_str();
  cmd->add_option("--format", o.format, "output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "table"}));
}

securegap::MechanismConfig make_config(const CommonOptions& o) {
  securegap::MechanismConfig cfg;
  cfg.epsilon = securegap::parse_rational(o.eps);
  const Rational gamma = securegap::parse_rational(o.gamma);
  if (gamma <= 0 || boost::multiprecision::numerator(gamma) != 1) {
    throw securegap::InvalidArgument("--gamma must be the reciprocal of a positive integer, got \"" +
                                     o.gamma + "\"");
  }
  cfg.gamma_denominator = boost::multiprecision::denominator(gamma);
  cfg.refine_factor = o.refine_factor;
  cfg.seed = o.seed;
  return cfg;
}

// Comma- or whitespace-separated integers or fractions.
std::vector<Rational> parse_query_list(const std::string& text) {
  std::string normalized = text;
  for (char& c : normalized) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(normalized);
  std::vector<Rational> out;
  std::string token;
  while (in >> token) out.push_back(securegap::parse_rational(token));
  if (out.empty()) throw securegap::InvalidArgument("--queries is empty");
  return out;
}

struct Input {
  std::string label;
  securegap::QueryVector queries;
  std::optional<std::vector<std::string>> items;
};

Input load_input(const std::string& dataset, const std::string& queries,
                 const BigInt& gamma_denominator) {
  Input in;
  if (!dataset.empty()) {
    auto data = securegap::ingest(dataset);
    in.label = dataset;
    in.queries = securegap::to_query_vector(data.counts, gamma_denominator);
    in.items = std::move(data.items);
  } else {
    const auto answers = parse_query_list(queries);
    in.label = "inline";
    in.queries = securegap::round_down_queries(answers, gamma_denominator);
  }
  return in;
}

void print_run_table(const Json& j) {
  std::cout << "variant " << j["variant"].get<std::string>() << "  k " << j["k"]
            << "  epsilon " << j["epsilon"].get<std::string>() << "  gamma_star "
            << j["gamma_star"].get<std::string>() << "  refine_levels " << j["refine_levels"]
            << '\n';
  const bool has_items = j.contains("items");
  std::printf("%6s %10s %-20s %s\n", "rank", "index", has_items ? "item" : "", "gap");
  for (std::size_t r = 0; r < j["indices"].size(); ++r) {
    const std::string item = has_items ? j["items"][r].get<std::string>() : "";
    const std::string gap = j["gaps"][r].get<std::string>();
    std::printf("%6zu %10zu %-20s %s\n", r + 1, j["indices"][r].get<std::size_t>(), item.c_str(),
                gap.c_str());
  }
}

int cmd_run(const CommonOptions& common, const std::string& dataset, const std::string& queries,
            std::size_t k, const std::string& variant_name, bool no_prune,
            std::uint32_t max_refine_level) {
  auto cfg = make_config(common);
  cfg.k = k;
  cfg.prune = !no_prune;
  cfg.max_refine_level = max_refine_level;
  const auto variant = securegap::parse_variant(variant_name);
  if (variant == securegap::Variant::kOptimizedSecure) {
    throw securegap::InvalidArgument("use --variant secure; pruning is controlled by --no-prune");
  }
  const Input in = load_input(dataset, queries, cfg.gamma_denominator);
  if (in.queries.size() < k + 2) {
    throw securegap::InvalidArgument("k = " + std::to_string(k) + " needs at least k + 2 = " +
                                     std::to_string(k + 2) + " queries, got " +
                                     std::to_string(in.queries.size()));
  }
  const auto* items = in.items ? &*in.items : nullptr;
  Json out;
  switch (variant) {
    case securegap::Variant::kSecure:
      out = securegap::run_json("secure", cfg, securegap::secure_top_k_gap(in.queries, cfg), items);
      break;
    case securegap::Variant::kRoundedReference:
      out = securegap::run_json("rounded-reference", cfg,
                                securegap::rounded_reference_top_k_gap(in.queries, cfg), items);
      break;
    default:
      out = securegap::run_json(cfg, securegap::ideal_baseline_top_k_gap(in.queries, cfg), items);
      break;
  }
  if (common.format == "json") {
    std::cout << out.dump(2) << '\n';
  } else {
    print_run_table(out);
  }
  return kExitOk;
}

int cmd_bench(const CommonOptions& common, const std::string& dataset, std::size_t synthetic_n,
              std::uint64_t synthetic_records, double skew, const std::vector<std::size_t>& ks,
              std::uint64_t trials, const std::vector<std::string>& variants) {
  securegap::BenchConfig config;
  config.mechanism = make_config(common);
  config.ks = ks;
  config.trials = trials;
  config.variants.clear();
  for (const auto& v : variants) config.variants.push_back(securegap::parse_variant(v));

  std::string label;
  securegap::QueryVector q;
  if (!dataset.empty()) {
    const auto data = securegap::ingest(dataset);
    label = dataset;
    q = securegap::to_query_vector(data.counts, config.mechanism.gamma_denominator);
  } else {
    const auto counts = securegap::zipf_counts(synthetic_n, synthetic_records, skew);
    label = "zipf-" + std::to_string(synthetic_n);
    q = securegap::to_query_vector(counts, config.mechanism.gamma_denominator);
  }
  for (std::size_t k : ks) {
    if (k < 1 || q.size() < k + 2) {
      throw securegap::InvalidArgument("k = " + std::to_string(k) + " needs 1 <= k <= n - 2 (n = " +
                                       std::to_string(q.size()) + ")");
    }
  }
  const auto report = securegap::bench(label, q, config);
  if (common.format == "json") {
    std::cout << securegap::to_json(report).dump(2) << '\n';
  } else {
    std::cout << securegap::format_table(report);
  }
  return kExitOk;
}

void print_suite_table(const securegap::SuiteReport& suite) {
  for (const auto& c : suite.checks) {
    std::printf("%-4s %-14s %s (cases %llu)\n", c.pass ? "PASS" : "FAIL", suite.suite.c_str(),
                c.name.c_str(), static_cast<unsigned long long>(c.cases));
    for (const auto& t : c.tests) {
      std::printf("       %-4s %-44s chi2 %12.3f  dof %4zu  p %.4g\n", t.pass ? "ok" : "FAIL",
                  t.name.c_str(), t.statistic, static_cast<std::size_t>(t.dof), t.p_value);
    }
    for (const auto& [name, value] : c.metrics) {
      std::printf("       %-49s %.6g\n", name.c_str(), value);
    }
    if (!c.counterexample.empty()) std::printf("       counterexample: %s\n", c.counterexample.c_str());
    for (const auto& note : c.notes) std::printf("       note: %s\n", note.c_str());
  }
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::uint64_t samples,
               std::uint64_t runs, const std::string& format) {
  std::vector<securegap::SuiteReport> reports;
  const bool all = suite == "all";
  if (all || suite == "lemmas") reports.push_back(securegap::run_lemma_suite(seed));
  if (all || suite == "samplers") reports.push_back(securegap::run_sampler_suite(seed, samples));
  if (all || suite == "equivalence") reports.push_back(securegap::run_equivalence_suite(seed, runs));
  bool pass = true;
  Json out = Json::array();
  for (const auto& r : reports) {
    pass = pass && r.pass();
    out.push_back(securegap::to_json(r));
  }
  if (format == "json") {
    std::cout << Json{{"pass", pass}, {"suites", out}}.dump(2) << '\n';
  } else {
    for (const auto& r : reports) print_suite_table(r);
    std::cout << (pass ? "all checks passed" : "verification FAILED") << '\n';
  }
  return pass ? kExitOk : kExitVerify;
}

int cmd_ingest(const std::string& dataset, const std::string& format) {
  const auto data = securegap::ingest(dataset);
  if (format == "json") {
    Json counts = Json::array();
    for (std::size_t i = 0; i < data.items.size(); ++i) {
      counts.push_back(Json{{"item", data.items[i]}, {"count", data.counts[i]}});
    }
    std::cout << Json{{"path", data.path},
                      {"n_records", data.n_records},
                      {"unique_items", data.unique_items()},
                      {"counts", std::move(counts)}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << data.path << ": " << data.n_records << " records, " << data.unique_items()
              << " unique items\n";
    for (std::size_t i = 0; i < data.items.size(); ++i) {
      std::printf("%8zu %-24s %llu\n", i + 1, data.items[i].c_str(),
                  static_cast<unsigned long long>(data.counts[i]));
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Noisy Top-k with Gap: run, benchmark and verify"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  std::string run_dataset, run_queries, run_variant = "secure";
  std::size_t run_k = 1;
  bool run_no_prune = false;
  std::uint32_t run_max_level = 64;
  auto* run = app.add_subcommand("run", "run one mechanism once and print the selection");
  auto* run_src = run->add_option_group("source")->require_option(1);
  run_src->add_option("--input,--dataset", run_dataset, "transaction file");
  run_src->add_option("--queries", run_queries, "inline query answers, e.g. 5,3,2.5,1/3");
  run->add_option("--k", run_k, "number of selected queries")->capture_default_str()
      ->check(CLI::PositiveNumber);
  run->add_option("--variant", run_variant)
      ->capture_default_str()
      ->check(CLI::IsMember({"secure", "rounded-reference", "ideal-baseline"}));
  run->add_flag("--no-prune", run_no_prune, "refine every query instead of the candidate pool");
  run->add_option("--max-refine-level", run_max_level, "cap on tie-breaking rounds")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  add_common(run, run_opts);

  CommonOptions bench_opts;
  std::string bench_dataset;
  std::size_t bench_n = 4000;
  std::uint64_t bench_records = 100000;
  double bench_skew = 1.0;
  std::vector<std::size_t> bench_ks{25};
  std::uint64_t bench_trials = 100;
  std::vector<std::string> bench_variants{"secure", "opt-secure", "ideal-baseline"};
  auto* bench = app.add_subcommand("bench", "time the mechanisms over repeated seeded trials");
  auto* bench_src = bench->add_option_group("source");
  bench_src->add_option("--input,--dataset", bench_dataset, "transaction file");
  bench_src->add_option("--synthetic-n", bench_n, "Zipf item count when no dataset is given")
      ->capture_default_str();
  bench_src->require_option(0, 1);
  bench->add_option("--records", bench_records, "Zipf record count")->capture_default_str();
  bench->add_option("--skew", bench_skew, "Zipf exponent")->capture_default_str();
  bench->add_option("--k", bench_ks, "k values")->delimiter(',')->capture_default_str();
  bench->add_option("--trials", bench_trials)->capture_default_str()->check(CLI::PositiveNumber);
  bench->add_option("--variant", bench_variants, "variants to time")
      ->delimiter(',')
      ->capture_default_str()
      ->check(CLI::IsMember({"secure", "opt-secure", "rounded-reference", "ideal-baseline"}));
  add_common(bench, bench_opts);
  bench_opts.format = "table";

  std::string verify_suite;
  std::uint64_t verify_seed = 1, verify_samples = 300000, verify_runs = 200000;
  std::string verify_format = "json";
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", verify_suite)
      ->required()
      ->check(CLI::IsMember({"lemmas", "samplers", "equivalence", "all"}));
  verify->add_option("--seed", verify_seed)->capture_default_str();
  verify->add_option("--samples", verify_samples, "draws per sampler test")->capture_default_str();
  verify->add_option("--runs", verify_runs, "runs per side per equivalence fixture")
      ->capture_default_str();
  verify->add_option("--format", verify_format)
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "table"}));

  std::string ingest_dataset, ingest_format = "table";
  auto* ingest = app.add_subcommand("ingest", "count item frequencies in a transaction file");
  ingest->add_option("--input,--dataset", ingest_dataset)->required();
  ingest->add_option("--format", ingest_format)
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "table"}));

  std::string synth_output;
  std::size_t synth_n = 4000;
  std::uint64_t synth_records = 100000, synth_seed = 0;
  double synth_skew = 1.0;
  auto* synth = app.add_subcommand("synth", "write a Zipf-distributed transaction file");
  synth->add_option("--output", synth_output)->required();
  synth->add_option("--n", synth_n, "unique items")->capture_default_str()->check(CLI::PositiveNumber);
  synth->add_option("--records", synth_records)->capture_default_str()->check(CLI::PositiveNumber);
  synth->add_option("--skew", synth_skew)->capture_default_str();
  synth->add_option("--seed", synth_seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (run->parsed()) {
      return cmd_run(run_opts, run_dataset, run_queries, run_k, run_variant, run_no_prune,
                     run_max_level);
    }
    if (bench->parsed()) {
      return cmd_bench(bench_opts, bench_dataset, bench_n, bench_records, bench_skew, bench_ks,
                       bench_trials, bench_variants);
    }
    if (verify->parsed()) {
      return cmd_verify(verify_suite, verify_seed, verify_samples, verify_runs, verify_format);
    }
    if (ingest->parsed()) return cmd_ingest(ingest_dataset, ingest_format);
    if (synth->parsed()) {
      securegap::write_synthetic_dataset(synth_output, synth_n, synth_records, synth_skew,
                                         synth_seed);
      return kExitOk;
    }
  } catch (const securegap::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
