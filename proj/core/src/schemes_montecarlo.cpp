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

#include "secout/schemes_montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>
#include <vector>

#include "secout/errors.hpp"

namespace secout {
namespace {

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

CapacityTuple oss_unchecked(const FadingDraw& h, const SystemConfig& cfg) {
  const double alpha = cfg.spectrum_split;
  const double gm = cfg.snr_macro;
  const double gs = cfg.snr_small();
  CapacityTuple c;
  c.c_main_macro = alpha * log2_1p(gm * h.power_of(Link::MbsMu));
  c.c_eve_macro = alpha * log2_1p(gm * h.power_of(Link::MbsEve));
  c.c_main_small = (1.0 - alpha) * log2_1p(gs * h.power_of(Link::SbsSu));
  c.c_eve_small = (1.0 - alpha) * log2_1p(gs * h.power_of(Link::SbsEve));
  return c;
}

CapacityTuple il_unchecked(const FadingDraw& h, const SystemConfig& cfg) {
  const double gm = cfg.snr_macro;
  const double gs = cfg.snr_small();
  CapacityTuple c;
  c.c_main_macro = log2_1p(gm * h.power_of(Link::MbsMu) / (gs * h.power_of(Link::SbsMu) + 1.0));
  c.c_eve_macro = log2_1p(gm * h.power_of(Link::MbsEve) / (gs * h.power_of(Link::SbsEve) + 1.0));
  c.c_main_small = log2_1p(gs * h.power_of(Link::SbsSu) / (gm * h.power_of(Link::MbsSu) + 1.0));
  c.c_eve_small = log2_1p(gs * h.power_of(Link::SbsEve) / (gm * h.power_of(Link::MbsEve) + 1.0));
  return c;
}

IcPowerState ic_power_unchecked(const FadingDraw& h, const SystemConfig& cfg, const LinkGains& gains) {
  IcPowerState s;
  const double p_s = cfg.snr_small();
  s.p_bar_m = gains.sbs_mu / gains.mbs_mu * p_s;
  s.p_m = h.power_of(Link::SbsMu) / gains.mbs_mu * p_s;
  s.gamma_bar_m = s.p_bar_m;
  s.gamma_m = s.p_m;
  return s;
}

CapacityTuple ic_unchecked(const FadingDraw& h, const SystemConfig& cfg, const LinkGains& gains) {
  const IcPowerState s = ic_power_unchecked(h, cfg, gains);
  const double gm = cfg.snr_macro;
  const double gs = cfg.snr_small();
  const double info = gm - s.gamma_bar_m;           // information-signal SNR at the MBS
  const double mbs_total = info + s.gamma_m;        // everything the MBS radiates
  const double weight = h.power_of(Link::MbsMu) / gains.mbs_mu;  // |w_S|^2
  const double me = h.power_of(Link::MbsEve);
  CapacityTuple c;
  c.c_main_macro = log2_1p(info * h.power_of(Link::MbsMu));
  c.c_main_small = log2_1p(h.power_of(Link::SbsSu) * gs * weight /
                           (h.power_of(Link::MbsSu) * mbs_total + 1.0));
  c.c_eve_macro = log2_1p(me * info / (me * s.gamma_m + h.power_of(Link::SbsEve) * gs * weight + 1.0));
  c.c_eve_small = log2_1p(h.power_of(Link::SbsEve) * gs * weight / (me * mbs_total + 1.0));
  return c;
}

CapacityTuple capacities_unchecked(Scheme scheme, const FadingDraw& h, const SystemConfig& cfg,
                                   const LinkGains& gains) {
  switch (scheme) {
    case Scheme::Oss: return oss_unchecked(h, cfg);
    case Scheme::Il: return il_unchecked(h, cfg);
    case Scheme::Ic: return ic_unchecked(h, cfg, gains);
  }
  throw DomainError("unknown scheme");
}

void check_inputs(const SystemConfig& cfg, const LinkGains& gains) {
  cfg.validate();
  gains.validate();
}

}  // namespace

double CapacityTuple::secrecy_macro() const { return std::max(c_main_macro - c_eve_macro, 0.0); }
double CapacityTuple::secrecy_small() const { return std::max(c_main_small - c_eve_small, 0.0); }

CapacityTuple capacities_oss(const FadingDraw& draw, const SystemConfig& cfg, const LinkGains& gains) {
  check_inputs(cfg, gains);
  return oss_unchecked(draw, cfg);
}

CapacityTuple capacities_il(const FadingDraw& draw, const SystemConfig& cfg, const LinkGains& gains) {
  check_inputs(cfg, gains);
  return il_unchecked(draw, cfg);
}

CapacityTuple capacities_ic(const FadingDraw& draw, const SystemConfig& cfg, const LinkGains& gains) {
  check_inputs(cfg, gains);
  require_cancellation_feasible(cfg, gains);
  return ic_unchecked(draw, cfg, gains);
}

CapacityTuple capacities(Scheme scheme, const FadingDraw& draw, const SystemConfig& cfg,
                         const LinkGains& gains) {
  check_inputs(cfg, gains);
  if (scheme == Scheme::Ic) require_cancellation_feasible(cfg, gains);
  return capacities_unchecked(scheme, draw, cfg, gains);
}

IcPowerState ic_power_state(const FadingDraw& draw, const SystemConfig& cfg, const LinkGains& gains) {
  check_inputs(cfg, gains);
  require_cancellation_feasible(cfg, gains);
  return ic_power_unchecked(draw, cfg, gains);
}

double ic_cancellation_residual(const FadingDraw& draw, const SystemConfig& cfg, const LinkGains& gains,
                                double design_phase_offset) {
  check_inputs(cfg, gains);
  require_cancellation_feasible(cfg, gains);
  using namespace std::complex_literals;
  const double p_s = cfg.snr_small();
  const double p_bar_m = gains.sbs_mu / gains.mbs_mu * p_s;
  const std::complex<double> h_mm = draw.coefficient(Link::MbsMu);
  const std::complex<double> h_sm = draw.coefficient(Link::SbsMu);
  const std::complex<double> x_s = 1.0;

  const double theta_mm = draw.phase_of(Link::MbsMu) + design_phase_offset;
  const double theta_sm = draw.phase_of(Link::SbsMu);
  const std::complex<double> x_m =
      -std::abs(h_sm) / std::sqrt(gains.sbs_mu) * std::exp(-1.0i * theta_mm) * x_s;
  const std::complex<double> w_s = std::abs(h_mm) / std::sqrt(gains.mbs_mu) * std::exp(-1.0i * theta_sm);

  return std::abs(std::sqrt(p_bar_m) * h_mm * x_m + std::sqrt(p_s) * h_sm * w_s * x_s);
}

SopEstimate make_estimate(std::uint64_t hits, std::uint64_t n) {
  if (n == 0) throw DomainError("Monte-Carlo estimate needs n >= 1");
  SopEstimate e;
  e.n = n;
  e.p_hat = static_cast<double>(hits) / static_cast<double>(n);
  e.std_error = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(n));
  return e;
}

SopEstimate estimate_event(const OutageEvent& event, const LinkGains& gains, std::uint64_t n,
                           const RngStream& rng, const McOptions& options) {
  if (n == 0) throw DomainError("Monte-Carlo estimate needs n >= 1");
  if (options.chunk_size == 0) throw DomainError("chunk_size must be >= 1");
  gains.validate();

  const std::uint64_t chunk = options.chunk_size;
  const std::uint64_t chunks = (n + chunk - 1) / chunk;
  std::vector<std::uint64_t> hits(chunks, 0);

  const auto run_chunk = [&](std::uint64_t c) {
    RngStream stream = rng.substream(c);
    const std::uint64_t count = std::min(chunk, n - c * chunk);
    std::uint64_t local = 0;
    for (std::uint64_t k = 0; k < count; ++k) {
      if (event(sample_fading(gains, stream))) ++local;
    }
    hits[c] = local;
  };

  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(std::max(options.workers, 1u), chunks));
  if (workers == 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          try {
            for (std::uint64_t c = next++; c < chunks; c = next++) run_chunk(c);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = chunks;
          }
        });
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  std::uint64_t total = 0;
  for (std::uint64_t h : hits) total += h;
  return make_estimate(total, n);
}

SopEstimate estimate_sop(Scheme scheme, Cell cell, const SystemConfig& cfg, const LinkGains& gains,
                         std::uint64_t n, const RngStream& rng, const McOptions& options) {
  check_inputs(cfg, gains);
  if (scheme == Scheme::Ic) require_cancellation_feasible(cfg, gains);
  const double rate = cell == Cell::Macro ? cfg.rate_macro : cfg.rate_small;
  const OutageEvent event = [&](const FadingDraw& h) {
    const CapacityTuple c = capacities_unchecked(scheme, h, cfg, gains);
    return (cell == Cell::Macro ? c.secrecy_macro() : c.secrecy_small()) < rate;
  };
  return estimate_event(event, gains, n, rng, options);
}

bool ic_macro_exact_event(const FadingDraw& h, const SystemConfig& cfg, const LinkGains& gains) {
  const IcPowerState s = ic_power_unchecked(h, cfg, gains);
  const double gm = cfg.snr_macro;
  const double two_r = std::exp2(cfg.rate_macro);
  const double mm = h.power_of(Link::MbsMu);
  const double me = h.power_of(Link::MbsEve);
  const double se = h.power_of(Link::SbsEve);
  const double info = gm - s.gamma_bar_m;
  // Both sides carry an extra |h_Me|^2 so a zero eavesdropper channel needs no
  // division; the noise term is then 1/gamma_M rather than 1/(|h_Me|^2 gamma_M).
  const double first = (1.0 - two_r) / gm + mm * info / gm;
  const double second = s.gamma_m * me / gm + se * mm * cfg.snr_small() / (gains.mbs_mu * gm) + 1.0 / gm;
  return first * second < two_r * info / (gm * gm) * me;
}

SopEstimate estimate_sop_exact_ic_macro(const SystemConfig& cfg, const LinkGains& gains,
                                        std::uint64_t n, const RngStream& rng,
                                        const McOptions& options) {
  check_inputs(cfg, gains);
  require_cancellation_feasible(cfg, gains);
  return estimate_event([&](const FadingDraw& h) { return ic_macro_exact_event(h, cfg, gains); },
                        gains, n, rng, options);
}

}  // namespace secout
