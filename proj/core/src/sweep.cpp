// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The secout Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "secout/asymptotics.hpp"
#include "secout/experiments.hpp"

namespace secout {
namespace {

using Clock = std::chrono::steady_clock;

class RowTimer {
 public:
  explicit RowTimer(bool enabled) : enabled_(enabled), start_(Clock::now()) {}

  std::optional<double> elapsed_ms() const {
    if (!enabled_) return std::nullopt;
    return std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
  }

 private:
  bool enabled_;
  Clock::time_point start_;
};

// Standard error of the combined estimate from independent cell estimates
// (first-order propagation).
double combined_std_error(const SopEstimate& macro, const SopEstimate& small, Combiner combiner) {
  if (combiner == Combiner::Mean) {
    return 0.5 * std::hypot(macro.std_error, small.std_error);
  }
  return std::hypot(small.p_hat * macro.std_error, macro.p_hat * small.std_error);
}

ResultRow analytic_row(const SweepSpec& spec, std::size_t k, Scheme scheme, const SystemConfig& cfg,
                       const LinkGains& gains, const RunOptions& options) {
  ResultRow row;
  row.axis_value = spec.values[k];
  row.scheme = std::string(scheme_name(scheme));
  row.method = "analytic";
  const RowTimer timer(options.record_timing);
  try {
    const double macro = analytic_sop(scheme, Cell::Macro, cfg, gains);
    row.p_macro = macro;
    if (spec.cells == CellSet::Both) {
      const double small = analytic_sop(scheme, Cell::Small, cfg, gains);
      row.p_small = small;
      row.p_overall = overall_sop(macro, small, spec.combiner);
    }
  } catch (const std::exception& e) {
    row = ResultRow{row.axis_value, row.scheme, row.method, {}, {}, {}, {}, {}, e.what()};
  }
  row.wall_time_ms = timer.elapsed_ms();
  return row;
}

ResultRow mc_row(const SweepSpec& spec, std::size_t k, Scheme scheme, const SystemConfig& cfg,
                 const LinkGains& gains, const RunOptions& options) {
  ResultRow row;
  row.axis_value = spec.values[k];
  row.scheme = std::string(scheme_name(scheme));
  row.method = "mc";
  const RowTimer timer(options.record_timing);
  // Every scheme at a point sees the same draws; the two cells use separate streams.
  const RngStream point(spec.seed, k);
  try {
    const SopEstimate macro =
        scheme == Scheme::Ic
            ? estimate_sop_exact_ic_macro(cfg, gains, spec.mc_samples, point.substream(0), options.mc)
            : estimate_sop(scheme, Cell::Macro, cfg, gains, spec.mc_samples, point.substream(0), options.mc);
    row.p_macro = macro.p_hat;
    row.std_error = macro.std_error;
    if (spec.cells == CellSet::Both) {
      const SopEstimate small =
          estimate_sop(scheme, Cell::Small, cfg, gains, spec.mc_samples, point.substream(1), options.mc);
      row.p_small = small.p_hat;
      row.p_overall = overall_sop(macro.p_hat, small.p_hat, spec.combiner);
      row.std_error = combined_std_error(macro, small, spec.combiner);
    }
  } catch (const std::exception& e) {
    row = ResultRow{row.axis_value, row.scheme, row.method, {}, {}, {}, {}, {}, e.what()};
  }
  row.wall_time_ms = timer.elapsed_ms();
  return row;
}

std::vector<ResultRow> bound_rows(const SweepSpec& spec, std::size_t k, const SystemConfig& cfg,
                                  const LinkGains& gains, const RunOptions& options) {
  const RowTimer timer(options.record_timing);
  ResultRow lower{spec.values[k], "IC", "lower_bound", {}, {}, {}, {}, {}, {}};
  ResultRow upper{spec.values[k], "IC", "upper_bound", {}, {}, {}, {}, {}, {}};
  try {
    const OutageBounds b = ic_macro_bounds(cfg, gains);
    lower.p_macro = b.lower;
    upper.p_macro = b.upper;
  } catch (const std::exception& e) {
    lower.error = e.what();
    upper.error = e.what();
  }
  lower.wall_time_ms = upper.wall_time_ms = timer.elapsed_ms();
  return {lower, upper};
}

std::vector<ResultRow> evaluate_point(const SweepSpec& spec, std::size_t k, const LinkGains& gains,
                                      const RunOptions& options) {
  const SystemConfig cfg = spec.config_at(k);
  std::vector<ResultRow> rows;
  for (Scheme scheme : spec.schemes) {
    if (spec.methods != MethodSet::MonteCarlo) rows.push_back(analytic_row(spec, k, scheme, cfg, gains, options));
    if (spec.methods != MethodSet::Analytic) rows.push_back(mc_row(spec, k, scheme, cfg, gains, options));
  }
  if (spec.ic_bounds) {
    for (ResultRow& r : bound_rows(spec, k, cfg, gains, options)) rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

std::vector<ResultRow> run_sweep(const SweepSpec& spec, const RunOptions& options) {
  spec.validate();
  const LinkGains gains = spec.gains();
  const std::size_t points = spec.values.size();
  std::vector<std::vector<ResultRow>> per_point(points);

  const unsigned workers = static_cast<unsigned>(std::clamp<std::size_t>(options.workers, 1, points));
  if (workers == 1) {
    for (std::size_t k = 0; k < points; ++k) per_point[k] = evaluate_point(spec, k, gains, options);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          try {
            for (std::size_t k = next++; k < points; k = next++) {
              per_point[k] = evaluate_point(spec, k, gains, options);
            }
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = points;
          }
        });
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<ResultRow> rows;
  for (auto& block : per_point) {
    for (ResultRow& r : block) rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace secout
