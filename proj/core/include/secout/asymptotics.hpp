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
#include <vector>

#include "secout/schemes_montecarlo.hpp"

namespace secout {

/// Limit of the IL macro outage as gamma_M grows without bound:
/// Pr(|h_Mm|^2/|h_Sm|^2 < 2^R |h_Me|^2/|h_Se|^2).
double il_macro_floor(const LinkGains& gains, double rate);

/// Exact high-SNR limit of the IL macro outage at a fixed beta. The rate
/// threshold scaled by gamma_S leaves a constant offset beta (2^R - 1), so this
/// is Pr(|h_Mm|^2/|h_Sm|^2 < beta (2^R - 1) + 2^R |h_Me|^2/|h_Se|^2) and it
/// exceeds il_macro_floor whenever beta > 0.
double il_macro_limit(const LinkGains& gains, double rate, double smr);

struct OutageBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// High-SNR envelope of the IC macro outage, 2^R ln(gamma)/(k sigma2_Sm beta gamma)
/// with k = 8 (lower) and k = 2 (upper). Needs gamma_M > 1 and beta > 0.
OutageBounds ic_macro_bounds(const SystemConfig& cfg, const LinkGains& gains);

enum class SlopeTarget { Overall, Macro, Small };

struct SlopeMethod {
  bool monte_carlo = false;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  McOptions mc{};
};

struct DiversityReport {
  Scheme scheme = Scheme::Oss;
  SlopeTarget target = SlopeTarget::Overall;
  std::vector<double> gamma_grid_db;
  std::vector<double> probabilities;
  /// -(log10 P[k+1] - log10 P[k]) / (log10 gamma[k+1] - log10 gamma[k])
  std::vector<double> pairwise_slopes;
  double extrapolated_slope = 0.0;  // last pairwise slope
};

/// Secrecy diversity estimate along a gamma_M grid (dB, strictly increasing,
/// at least three points) with beta held fixed. Overall uses the product
/// combiner. A zero probability at any grid point raises EvaluationError
/// carrying that point's gamma in dB.
DiversityReport diversity_slope(Scheme scheme, SlopeTarget target, const SystemConfig& cfg_template,
                                const LinkGains& gains, const std::vector<double>& gamma_grid_db,
                                const SlopeMethod& method = {});

}  // namespace secout
