/*
 * Copyright 2026 The mtnoc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mtnoc/engine.hpp"
#include "mtnoc/report.hpp"
#include "mtnoc/scenario.hpp"
#include "mtnoc/topology.hpp"

namespace {

// Exit statuses. Keep in sync with README.md.
enum Exit : int { kOk = 0, kUsage = 1, kParse = 2, kInvalid = 3, kRuntime = 4 };

namespace fs = std::filesystem;

/// Explicit --out wins; otherwise $MTNOC_OUT_DIR/<scenario stem><suffix>; otherwise stdout.
std::optional<fs::path> output_path(const std::string& out, const std::string& scenario,
                                    const std::string& suffix) {
  if (!out.empty()) return fs::path(out);
  if (const char* dir = std::getenv("MTNOC_OUT_DIR"); dir && *dir)
    return fs::path(dir) / (fs::path(scenario).stem().string() + suffix);
  return std::nullopt;
}

void emit(const std::optional<fs::path>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    return;
  }
  if (path->has_parent_path()) fs::create_directories(path->parent_path());
  std::ofstream f(*path, std::ios::binary);
  if (!f) throw mtnoc::Error("cannot write " + path->string());
  f << text;
  if (!f) throw mtnoc::Error("write failed: " + path->string());
}

int cmd_validate(const std::string& file) {
  const auto cfg = mtnoc::load_scenario(file);
  if (!cfg.bench) {
    const auto topo = mtnoc::build_topology(cfg.topology);
    const auto violations = mtnoc::validate(topo);
    for (const auto& v : violations) std::cout << file << ": " << v << '\n';
    if (!violations.empty()) return kInvalid;
  }
  mtnoc::validate_config(cfg);
  std::cout << file << ": ok\n";
  return kOk;
}

struct RunOptions {
  std::string file;
  std::optional<std::uint64_t> cycles;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string trace;
  std::string format = "text";
};

int cmd_run(const RunOptions& o) {
  auto cfg = mtnoc::load_scenario(o.file);
  if (o.cycles) {
    cfg.cycles = *o.cycles;
  }
  if (o.seed) cfg.seed = *o.seed;
  mtnoc::validate_config(cfg);

  std::ofstream trace;
  if (!o.trace.empty()) {
    trace.open(o.trace, std::ios::binary);
    if (!trace) throw mtnoc::Error("cannot write " + o.trace);
  }
  const auto report = mtnoc::run(cfg, trace.is_open() ? &trace : nullptr);

  const bool csv = o.format == "csv";
  const auto text = csv ? mtnoc::format_flow_csv(report) : mtnoc::format_text(report);
  const auto path = output_path(o.out, o.file, csv ? ".csv" : ".txt");
  emit(path, text);
  if (path) {
    const auto& t = report.total;
    std::printf("%s: %llu cycles, %zu flows, delivered %llu, denied %llu, in flight %llu, "
                "mean latency %.3f, wrote %s\n",
                o.file.c_str(), static_cast<unsigned long long>(report.cycles), report.flows.size(),
                static_cast<unsigned long long>(t.delivered),
                static_cast<unsigned long long>(t.denied),
                static_cast<unsigned long long>(t.in_flight()), report.total_stats.mean_latency(),
                path->string().c_str());
  }
  return kOk;
}

const char* variant_name(mtnoc::BenchPattern p) {
  return p == mtnoc::BenchPattern::Collision ? "collision" : "no_collision";
}

int cmd_sweep(const std::string& file, const std::vector<double>& rates, bool collision,
              const std::string& out) {
  if (rates.empty()) {
    std::cerr << "sweep: --rates needs at least one value\n";
    return kUsage;
  }
  auto cfg = mtnoc::load_scenario(file);
  std::vector<mtnoc::SweepSeries> series;
  if (cfg.bench) {
    std::vector<mtnoc::BenchPattern> patterns{cfg.bench->pattern};
    if (collision) patterns = {mtnoc::BenchPattern::NoCollision, mtnoc::BenchPattern::Collision};
    for (auto p : patterns) {
      cfg.bench->pattern = p;
      series.push_back({variant_name(p), mtnoc::sweep_injection(cfg, rates)});
    }
  } else {
    if (collision) throw mtnoc::ConfigError("--collision needs a scenario with a bench section");
    series.push_back({"scenario", mtnoc::sweep_injection(cfg, rates)});
  }
  emit(output_path(out, file, ".sweep.csv"), mtnoc::format_sweep_csv(series));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cycle-accurate multi-tenant FPGA NoC simulator"};
  app.require_subcommand(1);

  std::string validate_file;
  auto* validate = app.add_subcommand("validate", "Check a scenario and its topology");
  validate->add_option("file", validate_file, "Scenario file")->required();

  RunOptions run_opts;
  auto* run = app.add_subcommand("run", "Simulate a scenario and write its report");
  run->add_option("file", run_opts.file, "Scenario file")->required();
  run->add_option("--cycles", run_opts.cycles, "Override sim.cycles");
  run->add_option("--seed", run_opts.seed, "Override sim.seed");
  run->add_option("--out", run_opts.out, "Report path (default: stdout or $MTNOC_OUT_DIR)");
  run->add_option("--trace", run_opts.trace, "Per-router trace CSV path");
  run->add_option("--format", run_opts.format, "Report format")
      ->check(CLI::IsMember({"text", "csv"}));

  std::string sweep_file;
  std::string sweep_out;
  std::vector<std::string> rate_text;
  bool collision = false;
  auto* sweep = app.add_subcommand("sweep", "Run one simulation per injection rate");
  sweep->add_option("file", sweep_file, "Scenario file")->required();
  sweep->add_option("--rates", rate_text, "Comma-separated injection rates")
      ->delimiter(',')
      ->required()
      ->expected(0, -1);
  sweep->add_flag("--collision", collision, "Emit both no-collision and collision variants");
  sweep->add_option("--out", sweep_out, "CSV path (default: stdout or $MTNOC_OUT_DIR)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) return cmd_validate(validate_file);
    if (*run) return cmd_run(run_opts);
    if (*sweep) {
      std::vector<double> rates;
      for (const auto& t : rate_text) {
        if (t.empty()) continue;
        std::size_t used = 0;
        double v = 0;
        try {
          v = std::stod(t, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != t.size()) {
          std::cerr << "sweep: bad rate \"" << t << "\"\n";
          return kUsage;
        }
        rates.push_back(v);
      }
      return cmd_sweep(sweep_file, rates, collision, sweep_out);
    }
  } catch (const mtnoc::ScenarioError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const mtnoc::ConfigError& e) {
    std::cerr << "invalid scenario: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}
