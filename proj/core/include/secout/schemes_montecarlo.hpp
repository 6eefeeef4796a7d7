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

#pragma once

#include <cstdint>
#include <functional>

#include "secout/channel_model.hpp"
#include "secout/rng.hpp"
#include "secout/schemes_analytic.hpp"

namespace secout {

/// Channel capacities in bit/s/Hz for one fading draw.
struct CapacityTuple {
  double c_main_macro = 0.0;  // MBS -> MU
  double c_main_small = 0.0;  // SBS -> SU
  double c_eve_macro = 0.0;   // MBS -> E
  double c_eve_small = 0.0;   // SBS -> E

  double secrecy_macro() const;
  double secrecy_small() const;
};

CapacityTuple capacities_oss(const FadingDraw& draw, const SystemConfig& cfg, const LinkGains& gains);
CapacityTuple capacities_il(const FadingDraw& draw, const SystemConfig& cfg, const LinkGains& gains);

/// Throws DomainError when beta exceeds sigma2_Mm / sigma2_Sm.
CapacityTuple capacities_ic(const FadingDraw& draw, const SystemConfig& cfg, const LinkGains& gains);

CapacityTuple capacities(Scheme scheme, const FadingDraw& draw, const SystemConfig& cfg,
                         const LinkGains& gains);

/// Special-signal power bookkeeping with N0 = 1, so powers and SNRs coincide.
struct IcPowerState {
  double p_bar_m = 0.0;  // average special-signal power
  double p_m = 0.0;      // instantaneous special-signal power for this draw
  double gamma_bar_m = 0.0;
  double gamma_m = 0.0;
};

IcPowerState ic_power_state(const FadingDraw& draw, const SystemConfig& cfg, const LinkGains& gains);

/// |sqrt(Pbar_m) h_Mm x_m + sqrt(P_S) h_Sm w_S x_S| for a unit probe symbol.
/// A nonzero `design_phase_offset` mis-estimates theta_Mm in the design of x_m,
/// which should leave a visible residual.
double ic_cancellation_residual(const FadingDraw& draw, const SystemConfig& cfg, const LinkGains& gains,
                                double design_phase_offset = 0.0);

struct SopEstimate {
  double p_hat = 0.0;
  std::uint64_t n = 0;
  double std_error = 0.0;  // sqrt(p_hat (1 - p_hat) / n)
};

SopEstimate make_estimate(std::uint64_t hits, std::uint64_t n);

struct McOptions {
  /// Draws per chunk. Chunk c uses rng.substream(c), so results depend on
  /// (seed, index, chunk_size) and never on the worker count.
  std::uint64_t chunk_size = 1u << 16;
  unsigned workers = 1;
};

using OutageEvent = std::function<bool(const FadingDraw&)>;

/// Fraction of n draws for which `event` holds.
SopEstimate estimate_event(const OutageEvent& event, const LinkGains& gains, std::uint64_t n,
                           const RngStream& rng, const McOptions& options = {});

/// Empirical Pr((C_main - C_eve)^+ < R) for one scheme and cell.
SopEstimate estimate_sop(Scheme scheme, Cell cell, const SystemConfig& cfg, const LinkGains& gains,
                         std::uint64_t n, const RngStream& rng, const McOptions& options = {});

/// The macro IC outage event written in product form, keeping the 1/gamma_M
/// terms that the high-SNR closed form drops.
bool ic_macro_exact_event(const FadingDraw& draw, const SystemConfig& cfg, const LinkGains& gains);

SopEstimate estimate_sop_exact_ic_macro(const SystemConfig& cfg, const LinkGains& gains,
                                        std::uint64_t n, const RngStream& rng,
                                        const McOptions& options = {});

}  // namespace secout
