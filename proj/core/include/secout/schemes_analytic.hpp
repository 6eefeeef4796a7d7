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

#include <string>
#include <string_view>
#include <vector>

#include "secout/channel_model.hpp"
#include "secout/quadrature.hpp"

namespace secout {

/// Operating point shared by all three spectrum-sharing schemes. Noise power
/// is normalized to one, so SNRs double as transmit powers.
struct SystemConfig {
  double snr_macro = 1e10;      // gamma_M, linear
  double smr = 0.5;             // beta = gamma_S / gamma_M
  double spectrum_split = 0.5;  // alpha, macro share of the band (OSS only)
  double rate_macro = 1.0;      // R_M^s, bit/s/Hz
  double rate_small = 1.0;      // R_S^s, bit/s/Hz

  double snr_small() const { return smr * snr_macro; }

  /// Throws DomainError unless gamma_M > 0, beta >= 0, alpha in [0, 1] and
  /// both secrecy rates are > 0.
  void validate() const;
};

double db_to_linear(double db);
double linear_to_db(double linear);

/// Largest SMR for which the special signal fully cancels SBS interference
/// at the macro user: sigma2_Mm / sigma2_Sm.
double max_cancelling_smr(const LinkGains& gains);

/// Throws DomainError when beta exceeds max_cancelling_smr().
void require_cancellation_feasible(const SystemConfig& cfg, const LinkGains& gains);

/// Free-form notes about degenerate or out-of-regime inputs.
struct Diagnostics {
  std::vector<std::string> notes;
};

// ---------------------------------------------------------------------------
// Orthogonal sharing

double sop_oss_macro(const SystemConfig& cfg, const LinkGains& gains, Diagnostics* diag = nullptr);
double sop_oss_small(const SystemConfig& cfg, const LinkGains& gains, Diagnostics* diag = nullptr);

// ---------------------------------------------------------------------------
// Interference-limited kernel
//
// Pr(U < e + f V) with U = |h1|^2 / (b' |h2|^2 + 1), V = |h3|^2 / (d' |h4|^2 + 1)
// written in the normalized parameters a = 1/E|h1|^2, b, c = 1/E|h3|^2, d,
// e >= 0 and f >= 1 used by every interference-limited closed form here.

struct KernelParams {
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;
  double d = 1.0;
  double e = 0.0;
  double f = 1.0;

  void validate() const;
};

/// The auxiliary quantities g..l of the closed form.
struct KernelDerived {
  double g = 0.0;
  double h = 0.0;
  double i = 0.0;
  double j = 0.0;
  double k = 0.0;
  double l = 0.0;
  /// b f - d (b e + 1); the closed form switches branch when this vanishes.
  double gap = 0.0;
};

KernelDerived derive_kernel(const KernelParams& p);

enum class KernelBranch {
  General,     // Ei-based closed form, b f != d (b e + 1)
  Degenerate,  // limiting form on b f == d (b e + 1)
  Quadrature,  // numerical integral where the general form cancels badly
};

struct KernelResult {
  double value = 0.0;
  KernelBranch branch = KernelBranch::General;
};

/// Relative width of the band |gap| <= eps * max(b f, d (b e + 1)) treated
/// as the degenerate branch.
inline constexpr double kKernelBranchEpsilon = 1e-9;

KernelResult il_kernel_detailed(const KernelParams& p);
double il_kernel(const KernelParams& p);

/// Kernel parameters of the macro and small cell under IL-NOSS.
KernelParams il_macro_params(const SystemConfig& cfg, const LinkGains& gains);
KernelParams il_small_params(const SystemConfig& cfg, const LinkGains& gains);

double sop_il_macro(const SystemConfig& cfg, const LinkGains& gains);
double sop_il_small(const SystemConfig& cfg, const LinkGains& gains);

// ---------------------------------------------------------------------------
// Interference-cancelled sharing

/// Integrand f(x) of the high-SNR macro-cell outage, P = int f(x) e^{-x} dx.
double ic_macro_integrand(double x, const SystemConfig& cfg, const LinkGains& gains);

/// The same integrand evaluated literally through inner_inverse_square_integral.
/// Accurate only while the two terms do not cancel (moderate SNR).
double ic_macro_integrand_literal(double x, const SystemConfig& cfg, const LinkGains& gains);

/// High-SNR closed form of the macro-cell outage under IC-NOSS.
QuadratureResult sop_ic_macro_detailed(const SystemConfig& cfg, const LinkGains& gains);
double sop_ic_macro(const SystemConfig& cfg, const LinkGains& gains);

/// Kernel parameters of g(x) for the small cell at |h_Mm|^2 / sigma2_Mm = x.
KernelParams ic_small_params(double x, const SystemConfig& cfg, const LinkGains& gains);

/// Small-cell outage under IC-NOSS in the weak-interference regime. Adds a
/// note to `diag` when sigma2_Sm > 0.1 sigma2_Mm.
QuadratureResult sop_ic_small_detailed(const SystemConfig& cfg, const LinkGains& gains,
                                       Diagnostics* diag = nullptr);
double sop_ic_small(const SystemConfig& cfg, const LinkGains& gains, Diagnostics* diag = nullptr);

// ---------------------------------------------------------------------------

enum class Scheme { Oss, Il, Ic };
enum class Cell { Macro, Small };

std::string_view scheme_name(Scheme scheme);
std::string_view cell_name(Cell cell);

/// Closed-form outage for one scheme and cell (the IC macro value is the
/// high-SNR form).
double analytic_sop(Scheme scheme, Cell cell, const SystemConfig& cfg, const LinkGains& gains,
                    Diagnostics* diag = nullptr);

enum class Combiner {
  Product,  // p_macro * p_small
  Mean,     // (p_macro + p_small) / 2
};

double overall_sop(double p_macro, double p_small, Combiner combiner);

}  // namespace secout
