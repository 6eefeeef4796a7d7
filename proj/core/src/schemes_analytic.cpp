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

#include "secout/schemes_analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "secout/errors.hpp"
#include "secout/special_math.hpp"

namespace secout {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kClampSlack = 1e-9;

// Above this condition number the general kernel branch is replaced by
// direct quadrature (roughly 1e-11 relative error left).
constexpr double kMaxKernelCancellation = 5e4;

double pow2(double r) { return std::exp2(r); }

// 2^r - 1 without cancellation for small r.
double pow2_minus_one(double r) { return std::expm1(r * std::numbers::ln2); }

double checked_probability(double p, const char* where) {
  if (std::isnan(p) || p < -kClampSlack || p > 1.0 + kClampSlack) {
    std::ostringstream msg;
    msg.precision(17);
    msg << where << ": value " << p << " is not a probability";
    throw ConsistencyError(msg.str());
  }
  return std::clamp(p, 0.0, 1.0);
}

void note(Diagnostics* diag, std::string text) {
  if (diag != nullptr) diag->notes.push_back(std::move(text));
}

// 1 - exp(-y) / (1 + q), rearranged so small outcomes keep their digits.
double one_minus_scaled_exp(double q, double y) {
  if (std::isinf(q)) return 1.0;
  return (q - std::expm1(-y)) / (1.0 + q);
}

// Wiretap outage with interference-free links:
// Pr(|h_main|^2 < lambda + m |h_eve|^2) with m = 2^{rate}.
double interference_free_outage(double sigma2_main, double sigma2_eve, double lambda,
                                double multiplier) {
  return one_minus_scaled_exp(sigma2_eve * multiplier / sigma2_main, lambda / sigma2_main);
}

// int_0^inf e^{-s v} [d/(dv+1)^2 + c/(dv+1)] / (b f v + b e + 1) dv
double kernel_integral(const KernelParams& p) {
  const double s = p.a * p.f + p.c;
  const double q = p.b * p.e + 1.0;
  const double slope = p.b * p.f;
  const auto integrand = [&](double v) {
    const double dv1 = p.d * v + 1.0;
    return std::exp(-s * v) * (p.d / (dv1 * dv1) + p.c / dv1) / (slope * v + q);
  };
  const double lo = std::min({1.0 / s, 1.0 / p.d, q / slope});
  const double hi = 50.0 / s;
  return integrate_semi_infinite(integrand, 1e-13, 0.0, 4000,
                                 log_spaced_breakpoints(lo * 1e-2, std::max(hi, lo * 1e-1), 2))
      .value;
}

}  // namespace

void SystemConfig::validate() const {
  if (!(snr_macro > 0.0) || !std::isfinite(snr_macro)) throw DomainError("gamma_M must be finite and > 0");
  if (!(smr >= 0.0) || !std::isfinite(smr)) throw DomainError("beta must be finite and >= 0");
  if (!(spectrum_split >= 0.0 && spectrum_split <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
  if (!(rate_macro > 0.0) || !std::isfinite(rate_macro)) throw DomainError("R_M must be finite and > 0");
  if (!(rate_small > 0.0) || !std::isfinite(rate_small)) throw DomainError("R_S must be finite and > 0");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

double max_cancelling_smr(const LinkGains& gains) { return gains.mbs_mu / gains.sbs_mu; }

void require_cancellation_feasible(const SystemConfig& cfg, const LinkGains& gains) {
  const double bound = max_cancelling_smr(gains);
  if (cfg.smr > bound) {
    std::ostringstream msg;
    msg << "beta = " << cfg.smr << " exceeds sigma2_Mm/sigma2_Sm = " << bound
        << "; the special signal cannot cancel SBS interference at MU";
    throw DomainError(msg.str());
  }
}

// ---------------------------------------------------------------------------

double sop_oss_macro(const SystemConfig& cfg, const LinkGains& gains, Diagnostics* diag) {
  cfg.validate();
  gains.validate();
  if (cfg.spectrum_split == 0.0) {
    note(diag, "OSS macro: alpha = 0 leaves the macro cell no spectrum; outage is certain");
    return 1.0;
  }
  const double exponent = cfg.rate_macro / cfg.spectrum_split;
  const double lambda = pow2_minus_one(exponent) / cfg.snr_macro;
  return checked_probability(
      interference_free_outage(gains.mbs_mu, gains.mbs_eve, lambda, pow2(exponent)), "sop_oss_macro");
}

double sop_oss_small(const SystemConfig& cfg, const LinkGains& gains, Diagnostics* diag) {
  cfg.validate();
  gains.validate();
  if (cfg.spectrum_split == 1.0) {
    note(diag, "OSS small: alpha = 1 leaves the small cell no spectrum; outage is certain");
    return 1.0;
  }
  if (cfg.snr_small() == 0.0) {
    note(diag, "OSS small: beta = 0 silences the small cell; outage is certain");
    return 1.0;
  }
  const double exponent = cfg.rate_small / (1.0 - cfg.spectrum_split);
  const double lambda = pow2_minus_one(exponent) / cfg.snr_small();
  return checked_probability(
      interference_free_outage(gains.sbs_su, gains.sbs_eve, lambda, pow2(exponent)), "sop_oss_small");
}

// ---------------------------------------------------------------------------

void KernelParams::validate() const {
  const auto finite_positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!finite_positive(a) || !finite_positive(c)) throw DomainError("kernel: a and c must be finite and > 0");
  if (!finite_positive(b) || !finite_positive(d)) throw DomainError("kernel: b and d must be finite and > 0");
  if (!(e >= 0.0) || !std::isfinite(e)) throw DomainError("kernel: e must be finite and >= 0");
  if (!(f >= 1.0) || !std::isfinite(f)) throw DomainError("kernel: f must be finite and >= 1");
}

KernelDerived derive_kernel(const KernelParams& p) {
  KernelDerived k;
  const double be1 = p.b * p.e + 1.0;
  const double bf = p.b * p.f;
  const double s = p.a * p.f + p.c;
  k.gap = bf - p.d * be1;
  const double gap2 = k.gap * k.gap;
  k.g = (bf * (p.c + p.d) - p.c * p.d * be1) / gap2;
  k.h = be1 * s / bf;
  k.i = s / p.d;
  k.j = -p.d / k.gap;
  k.k = (p.a * p.b * (p.d * p.e - p.f) + (p.a + p.b) * p.d) * p.f / gap2;
  k.l = (p.c - p.a * p.f) / (2.0 * p.d * be1);
  return k;
}

KernelResult il_kernel_detailed(const KernelParams& p) {
  p.validate();
  const KernelDerived k = derive_kernel(p);
  const double prefactor = std::exp(-p.a * p.e);
  const double scale = std::max(p.b * p.f, p.d * (p.b * p.e + 1.0));

  KernelResult out;
  if (std::abs(k.gap) <= kKernelBranchEpsilon * scale) {
    out.branch = KernelBranch::Degenerate;
    const double bracket = k.l + p.d / (2.0 * p.b * p.f) + k.l * k.i * scaled_exp_integral(k.i);
    out.value = checked_probability(1.0 - prefactor * bracket, "il_kernel (degenerate branch)");
    return out;
  }

  const double t1 = -k.g * scaled_exp_integral(k.h);
  const double t2 = k.k * scaled_exp_integral(k.i);
  const double sum = t1 + t2 + k.j;
  const double magnitude = std::abs(t1) + std::abs(t2) + std::abs(k.j);
  if (std::isfinite(sum) && magnitude <= kMaxKernelCancellation * std::abs(sum)) {
    out.branch = KernelBranch::General;
    out.value = checked_probability(1.0 - prefactor * sum, "il_kernel (general branch)");
    return out;
  }

  out.branch = KernelBranch::Quadrature;
  out.value = checked_probability(1.0 - prefactor * kernel_integral(p), "il_kernel (quadrature)");
  return out;
}

double il_kernel(const KernelParams& p) { return il_kernel_detailed(p).value; }

KernelParams il_macro_params(const SystemConfig& cfg, const LinkGains& gains) {
  const double snr_s = cfg.snr_small();
  KernelParams p;
  p.a = 1.0 / gains.mbs_mu;
  p.b = snr_s * gains.sbs_mu / gains.mbs_mu;
  p.c = 1.0 / gains.mbs_eve;
  p.d = snr_s * gains.sbs_eve / gains.mbs_eve;
  p.e = pow2_minus_one(cfg.rate_macro) / cfg.snr_macro;
  p.f = pow2(cfg.rate_macro);
  return p;
}

KernelParams il_small_params(const SystemConfig& cfg, const LinkGains& gains) {
  const double snr_s = cfg.snr_small();
  KernelParams p;
  p.a = 1.0 / gains.sbs_su;
  p.b = cfg.snr_macro * gains.mbs_su / gains.sbs_su;
  p.c = 1.0 / gains.sbs_eve;
  p.d = cfg.snr_macro * gains.mbs_eve / gains.sbs_eve;
  p.e = pow2_minus_one(cfg.rate_small) / snr_s;
  p.f = pow2(cfg.rate_small);
  return p;
}

double sop_il_macro(const SystemConfig& cfg, const LinkGains& gains) {
  cfg.validate();
  gains.validate();
  if (cfg.snr_small() == 0.0) {
    // Silent small cell: no interference anywhere on the macro side.
    const double lambda = pow2_minus_one(cfg.rate_macro) / cfg.snr_macro;
    return interference_free_outage(gains.mbs_mu, gains.mbs_eve, lambda, pow2(cfg.rate_macro));
  }
  return il_kernel(il_macro_params(cfg, gains));
}

double sop_il_small(const SystemConfig& cfg, const LinkGains& gains) {
  cfg.validate();
  gains.validate();
  if (cfg.snr_small() == 0.0) return 1.0;
  return il_kernel(il_small_params(cfg, gains));
}

// ---------------------------------------------------------------------------

namespace {

struct IcMacroScales {
  double epsilon_coeff;  // varphi_x - phi_x = epsilon_coeff / x
  double phi_coeff;      // phi_x = phi_coeff * x
};

IcMacroScales ic_macro_scales(const SystemConfig& cfg, const LinkGains& gains) {
  IcMacroScales s;
  s.epsilon_coeff = pow2(cfg.rate_macro) / (gains.sbs_mu * cfg.smr * cfg.snr_macro);
  s.phi_coeff = gains.mbs_mu * gains.sbs_eve / (gains.sbs_mu * gains.mbs_eve);
  return s;
}

void require_ic_inputs(const SystemConfig& cfg, const LinkGains& gains) {
  cfg.validate();
  gains.validate();
  require_cancellation_feasible(cfg, gains);
}

}  // namespace

double ic_macro_integrand_literal(double x, const SystemConfig& cfg, const LinkGains& gains) {
  if (!(x > 0.0)) throw DomainError("ic_macro_integrand: x must be > 0");
  const IcMacroScales s = ic_macro_scales(cfg, gains);
  const double phi = s.phi_coeff * x;
  const double epsilon = s.epsilon_coeff / x;
  const double varphi = phi + epsilon;
  return epsilon / varphi - phi * std::exp(-varphi) * inner_inverse_square_integral(-varphi, -phi);
}

double ic_macro_integrand(double x, const SystemConfig& cfg, const LinkGains& gains) {
  if (!(x > 0.0)) throw DomainError("ic_macro_integrand: x must be > 0");
  const IcMacroScales s = ic_macro_scales(cfg, gains);
  const double phi = s.phi_coeff * x;
  const double epsilon = s.epsilon_coeff / x;
  const double varphi = phi + epsilon;

  // Same quantity as phi * int_phi^varphi (1 - e^{-(varphi - s)}) / s^2 ds,
  // substituted s = phi e^u so every term is non-negative.
  const double upper = std::log1p(epsilon / phi);
  if (!(upper > 0.0)) return 0.0;
  const auto integrand = [&](double u) {
    const double gap = epsilon - phi * std::expm1(u);
    return -std::expm1(-std::max(gap, 0.0)) * std::exp(-u);
  };
  std::vector<double> cuts;
  if (epsilon > 1.0) cuts.push_back(std::log((varphi - 1.0) / phi));
  return integrate_adaptive(integrand, 0.0, upper, 1e-12, 0.0, 4000, cuts).value;
}

QuadratureResult sop_ic_macro_detailed(const SystemConfig& cfg, const LinkGains& gains) {
  require_ic_inputs(cfg, gains);
  if (cfg.smr == 0.0) throw DomainError("sop_ic_macro: the high-SNR form needs beta > 0");
  const IcMacroScales s = ic_macro_scales(cfg, gains);

  // f(x) ~ 1 below x ~ epsilon_coeff, decays like 1/x up to sqrt(epsilon_coeff/phi_coeff),
  // then like x^-3. Those scales can sit many decades below the first Laguerre node.
  const double knee = std::sqrt(s.epsilon_coeff / s.phi_coeff);
  QuadratureSpec spec;
  spec.method = QuadratureMethod::AdaptiveTransformed;
  spec.relative_tolerance = 1e-9;
  spec.max_refinements = 8000;
  spec.breakpoints = log_spaced_breakpoints(1e-3 * std::min(s.epsilon_coeff, knee), 50.0, 2);

  QuadratureResult r = integrate_exp_weighted(
      [&](double x) { return ic_macro_integrand(x, cfg, gains); }, spec);
  r.value = checked_probability(r.value, "sop_ic_macro");
  return r;
}

double sop_ic_macro(const SystemConfig& cfg, const LinkGains& gains) {
  return sop_ic_macro_detailed(cfg, gains).value;
}

KernelParams ic_small_params(double x, const SystemConfig& cfg, const LinkGains& gains) {
  if (!(x > 0.0)) throw DomainError("ic_small_params: x must be > 0");
  KernelParams p;
  p.a = 1.0 / (gains.sbs_su * x);
  p.b = cfg.snr_macro * gains.mbs_su / (gains.sbs_su * x);
  p.c = 1.0 / (gains.sbs_eve * x);
  p.d = cfg.snr_macro * gains.mbs_eve / (gains.sbs_eve * x);
  p.e = pow2_minus_one(cfg.rate_small) / cfg.snr_small();
  p.f = pow2(cfg.rate_small);
  return p;
}

QuadratureResult sop_ic_small_detailed(const SystemConfig& cfg, const LinkGains& gains,
                                       Diagnostics* diag) {
  require_ic_inputs(cfg, gains);
  if (gains.sbs_mu > 0.1 * gains.mbs_mu) {
    std::ostringstream msg;
    msg << "IC small: sigma2_Sm = " << gains.sbs_mu << " is not small against sigma2_Mm = "
        << gains.mbs_mu << "; the weak-interference closed form may be inaccurate";
    note(diag, msg.str());
  }
  if (cfg.snr_small() == 0.0) {
    note(diag, "IC small: beta = 0 silences the small cell; outage is certain");
    return {1.0, 0.0, 0};
  }

  const KernelParams unit = ic_small_params(1.0, cfg, gains);
  const double scale_signal = unit.e / unit.a;        // a_x e_x = 1
  const double scale_interference = unit.e * unit.b;  // b_x e_x = 1
  QuadratureSpec spec;
  spec.method = QuadratureMethod::AdaptiveTransformed;
  spec.relative_tolerance = 1e-10;
  spec.breakpoints = log_spaced_breakpoints(
      1e-3 * std::min({scale_signal, scale_interference, 1.0}), 50.0, 2);

  QuadratureResult r = integrate_exp_weighted(
      [&](double x) { return il_kernel(ic_small_params(x, cfg, gains)); }, spec);
  r.value = checked_probability(r.value, "sop_ic_small");
  return r;
}

double sop_ic_small(const SystemConfig& cfg, const LinkGains& gains, Diagnostics* diag) {
  return sop_ic_small_detailed(cfg, gains, diag).value;
}

// ---------------------------------------------------------------------------

std::string_view scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::Oss: return "OSS";
    case Scheme::Il: return "IL";
    case Scheme::Ic: return "IC";
  }
  return "?";
}

std::string_view cell_name(Cell cell) { return cell == Cell::Macro ? "macro" : "small"; }

double analytic_sop(Scheme scheme, Cell cell, const SystemConfig& cfg, const LinkGains& gains,
                    Diagnostics* diag) {
  const bool macro = cell == Cell::Macro;
  switch (scheme) {
    case Scheme::Oss: return macro ? sop_oss_macro(cfg, gains, diag) : sop_oss_small(cfg, gains, diag);
    case Scheme::Il: return macro ? sop_il_macro(cfg, gains) : sop_il_small(cfg, gains);
    case Scheme::Ic: return macro ? sop_ic_macro(cfg, gains) : sop_ic_small(cfg, gains, diag);
  }
  throw DomainError("unknown scheme");
}

double overall_sop(double p_macro, double p_small, Combiner combiner) {
  const auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!in_unit(p_macro) || !in_unit(p_small)) throw DomainError("overall_sop: inputs must lie in [0, 1]");
  switch (combiner) {
    case Combiner::Product: return p_macro * p_small;
    case Combiner::Mean: return 0.5 * (p_macro + p_small);
  }
  return p_macro * p_small;
}

}  // namespace secout
