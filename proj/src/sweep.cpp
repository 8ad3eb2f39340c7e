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

#include <cstddef>
#include <exception>
#include <vector>

#include "mtnoc/engine.hpp"

namespace mtnoc {

SimConfig at_rate(const SimConfig& cfg, double rate, std::size_t index) {
  if (!(rate >= 0.0 && rate <= 1.0))
    throw ConfigError("sweep rate " + std::to_string(rate) + " outside [0, 1]");
  SimConfig c = cfg;
  c.seed = derive_seed(cfg.seed, 0x5EEDull + index);
  if (c.bench) {
    c.bench->rate = rate;
  } else {
    for (auto& p : c.traffic)
      if (p.kind == TrafficKind::Bernoulli && !p.forged) p.rate = rate;
  }
  return c;
}

namespace {

SweepRow row_for(const SimConfig& cfg, double rate, std::size_t index) {
  const auto r = run(at_rate(cfg, rate, index));
  return SweepRow{rate, r.total_stats.mean_latency(), r.total_stats.mean_waiting(),
                  r.total_throughput, r.total.delivered};
}

}  // namespace

std::vector<SweepRow> sweep_injection_serial(const SimConfig& cfg, const std::vector<double>& rates) {
  validate_config(cfg);
  std::vector<SweepRow> rows;
  rows.reserve(rates.size());
  for (std::size_t i = 0; i < rates.size(); ++i) rows.push_back(row_for(cfg, rates[i], i));
  return rows;
}

std::vector<SweepRow> sweep_injection(const SimConfig& cfg, const std::vector<double>& rates) {
  validate_config(cfg);
  for (double r : rates)
    if (!(r >= 0.0 && r <= 1.0)) throw ConfigError("sweep rate " + std::to_string(r) + " outside [0, 1]");

  std::vector<SweepRow> rows(rates.size());
  std::vector<std::exception_ptr> errors(rates.size());
  const auto n = static_cast<std::ptrdiff_t>(rates.size());
  // Runs share nothing mutable; each writes only its own row.
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      rows[k] = row_for(cfg, rates[k], k);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

}  // namespace mtnoc
