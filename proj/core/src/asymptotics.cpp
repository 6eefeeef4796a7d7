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

#include "secout/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "secout/errors.hpp"

namespace secout {

namespace {

// Pr(X < offset + 2^R Y) for the ratios X = |h_Mm|^2/|h_Sm|^2 and Y = |h_Me|^2/|h_Se|^2,
// whose CDFs are x/(x + kx) and y/(y + ky). Integrating over Y in closed form gives
//   P = [(1 - r + r ln r) + o (r - 1 - ln r)] / (r - 1)^2
// with r = (offset + kx)/(2^R ky) and o = offset/(2^R ky). Both brackets are >= 0,
// so the sum does not cancel; near r = 1 each is replaced by its series in r - 1.
double ratio_outage(const LinkGains& gains, double rate, double offset) {
  gains.validate();
  if (!(rate > 0.0) || !std::isfinite(rate)) throw DomainError("IL floor: R must be finite and > 0");
  const double kx = gains.mbs_mu / gains.sbs_mu;
  const double ky = gains.mbs_eve / gains.sbs_eve;
  const double denom = std::exp2(rate) * ky;
  const double r = (offset + kx) / denom;
  const double o = offset / denom;
  const double delta = r - 1.0;

  double first = 0.0;   // (1 - r + r ln r) / delta^2
  double second = 0.0;  // (r - 1 - ln r) / delta^2
  if (std::abs(delta) < 1e-2) {
    double power = 1.0;
    for (int k = 2; k < 14; ++k) {
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      first += sign * power / (k * (k - 1.0));
      second += sign * power / k;
      power *= delta;
    }
  } else {
    const double log_r = std::log1p(delta);
    first = (r * log_r - delta) / (delta * delta);
    second = (delta - log_r) / (delta * delta);
  }
  return std::clamp(first + o * second, 0.0, 1.0);
}

}  // namespace

double il_macro_floor(const LinkGains& gains, double rate) { return ratio_outage(gains, rate, 0.0); }

double il_macro_limit(const LinkGains& gains, double rate, double smr) {
  if (!(smr >= 0.0) || !std::isfinite(smr)) throw DomainError("il_macro_limit: beta must be finite and >= 0");
  return ratio_outage(gains, rate, smr * std::expm1(rate * std::numbers::ln2));
}

OutageBounds ic_macro_bounds(const SystemConfig& cfg, const LinkGains& gains) {
  cfg.validate();
  gains.validate();
  if (!(cfg.snr_macro > 1.0)) throw DomainError("ic_macro_bounds: gamma_M must exceed 1 so that ln(gamma_M) > 0");
  if (!(cfg.smr > 0.0)) throw DomainError("ic_macro_bounds: beta must be > 0");
  require_cancellation_feasible(cfg, gains);
  const double core = std::exp2(cfg.rate_macro) * std::log(cfg.snr_macro) /
                      (gains.sbs_mu * cfg.smr * cfg.snr_macro);
  return {core / 8.0, core / 2.0};
}

namespace {

double point_probability(Scheme scheme, SlopeTarget target, const SystemConfig& cfg,
                         const LinkGains& gains, const SlopeMethod& method, std::uint64_t point) {
  const auto cell_value = [&](Cell cell) {
    if (!method.monte_carlo) return analytic_sop(scheme, cell, cfg, gains);
    const RngStream rng = RngStream(method.seed, point).substream(cell == Cell::Macro ? 0 : 1);
    return estimate_sop(scheme, cell, cfg, gains, method.samples, rng, method.mc).p_hat;
  };
  switch (target) {
    case SlopeTarget::Macro: return cell_value(Cell::Macro);
    case SlopeTarget::Small: return cell_value(Cell::Small);
    case SlopeTarget::Overall:
      return overall_sop(cell_value(Cell::Macro), cell_value(Cell::Small), Combiner::Product);
  }
  throw DomainError("unknown slope target");
}

}  // namespace

DiversityReport diversity_slope(Scheme scheme, SlopeTarget target, const SystemConfig& cfg_template,
                                const LinkGains& gains, const std::vector<double>& gamma_grid_db,
                                const SlopeMethod& method) {
  if (gamma_grid_db.size() < 3) throw DomainError("diversity_slope: need at least three grid points");
  for (std::size_t k = 1; k < gamma_grid_db.size(); ++k) {
    if (!(gamma_grid_db[k] > gamma_grid_db[k - 1])) {
      throw DomainError("diversity_slope: grid must be strictly increasing");
    }
  }

  DiversityReport report;
  report.scheme = scheme;
  report.target = target;
  report.gamma_grid_db = gamma_grid_db;
  for (std::size_t k = 0; k < gamma_grid_db.size(); ++k) {
    SystemConfig cfg = cfg_template;
    cfg.snr_macro = db_to_linear(gamma_grid_db[k]);
    const double p = point_probability(scheme, target, cfg, gains, method, k);
    if (!(p > 0.0)) {
      std::ostringstream msg;
      msg << "diversity_slope: outage is numerically zero at " << gamma_grid_db[k]
          << " dB; raise the sample count or use the analytic path";
      throw EvaluationError(msg.str(), gamma_grid_db[k]);
    }
    report.probabilities.push_back(p);
  }
  for (std::size_t k = 1; k < gamma_grid_db.size(); ++k) {
    const double dlog_p = std::log10(report.probabilities[k]) - std::log10(report.probabilities[k - 1]);
    const double dlog_gamma = (gamma_grid_db[k] - gamma_grid_db[k - 1]) / 10.0;
    report.pairwise_slopes.push_back(-dlog_p / dlog_gamma);
  }
  report.extrapolated_slope = report.pairwise_slopes.back();
  return report;
}

}  // namespace secout
