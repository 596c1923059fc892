/*
 Copyright 2026 The smatt Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

// smatt: command line driver for the set-membership attitude estimator.
//
//   smatt simulate --config <path> --out <path> [--format csv|json]
//                  [--seed N] [--seeds N]
//   smatt replicate-paper --out <path> [--format csv|json] [--seeds N]
//   smatt selftest
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI/CLI.hpp>
#include "smatt/errors.hpp"
#include "smatt/scenario.hpp"
#include "smatt/selftest.hpp"
#include "smatt/trace_io.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct RunOptions {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  int seeds = 1;
};

std::filesystem::path seed_path(const std::filesystem::path& out,
                                std::uint64_t seed) {
  std::filesystem::path p = out;
  p.replace_filename(out.stem().string() + "_seed" + std::to_string(seed) +
                     out.extension().string());
  return p;
}

void print_summary(std::uint64_t seed, const std::vector<smatt::TraceRecord>& recs,
                   const std::filesystem::path& path) {
  const smatt::TraceRecord& last = recs.back();
  int inside = 0;
  for (const auto& r : recs) inside += r.membership ? 1 : 0;
  std::printf(
      "seed %llu: terminal attitude error %.4f deg, rate error %.4f rad/s, "
      "tr(P) %.4g, membership %d/%zu -> %s\n",
      static_cast<unsigned long long>(seed), last.att_err_deg, last.rate_err,
      last.trace_P, inside, recs.size(), path.string().c_str());
}

int run(smatt::ScenarioConfig cfg, const RunOptions& opt) {
  const smatt::TraceFormat format = smatt::parse_trace_format(opt.format);
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.seeds < 1) throw smatt::ConfigError("--seeds must be >= 1");

  if (opt.seeds == 1) {
    const auto records = smatt::run_scenario(cfg);
    smatt::emit_trace(records, opt.out_path, format);
    print_summary(cfg.seed, records, opt.out_path);
    return 0;
  }

  // Independent filters per seed; each writes its own file.
  std::vector<std::future<std::vector<smatt::TraceRecord>>> jobs;
  for (int i = 0; i < opt.seeds; ++i) {
    smatt::ScenarioConfig c = cfg;
    c.seed = cfg.seed + static_cast<std::uint64_t>(i);
    jobs.push_back(std::async(std::launch::async,
                              [c] { return smatt::run_scenario(c); }));
  }
  for (int i = 0; i < opt.seeds; ++i) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
    const auto records = jobs[static_cast<std::size_t>(i)].get();
    const auto path = seed_path(opt.out_path, seed);
    smatt::emit_trace(records, path, format);
    print_summary(seed, records, path);
  }
  return 0;
}

int selftest() {
  int failed = 0;
  for (const auto& r : smatt::run_selftest()) {
    std::printf("[%s] %s: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    failed += r.passed ? 0 : 1;
  }
  return failed == 0 ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Set-membership attitude estimation from single direction measurements"};
  app.require_subcommand(1);

  RunOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Run a scenario from a config file");
  simulate->add_option("--config", sim.config_path, "Scenario config (JSON)")->required();
  simulate->add_option("--out", sim.out_path, "Trace output path")->required();
  simulate->add_option("--format", sim.format, "csv or json");
  simulate->add_option("--seed", sim.seed, "Override the config seed");
  simulate->add_option("--seeds", sim.seeds, "Run N consecutive seeds concurrently");

  RunOptions nominal;
  auto* replicate = app.add_subcommand(
      "replicate-paper", "Run the bundled paper_sec5 spacecraft scenario");
  replicate->add_option("--out", nominal.out_path, "Trace output path")->required();
  replicate->add_option("--format", nominal.format, "csv or json");
  replicate->add_option("--seed", nominal.seed, "Override the config seed");
  replicate->add_option("--seeds", nominal.seeds, "Run N consecutive seeds concurrently");

  auto* self = app.add_subcommand("selftest", "Run the built-in invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*simulate) return run(smatt::load_config(sim.config_path), sim);
    if (*replicate) return run(smatt::paper_sec5_config(), nominal);
    if (*self) return selftest();
  } catch (const smatt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
