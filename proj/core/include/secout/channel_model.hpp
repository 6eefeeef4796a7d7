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

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string_view>

#include "secout/rng.hpp"

namespace secout {

/// The six links of the two-cell network with a common eavesdropper.
enum class Link : std::size_t {
  MbsMu = 0,   // macro BS -> macro user
  MbsSu = 1,   // macro BS -> small-cell user (interference)
  SbsSu = 2,   // small BS -> small-cell user
  SbsMu = 3,   // small BS -> macro user (interference)
  MbsEve = 4,  // macro BS -> eavesdropper
  SbsEve = 5,  // small BS -> eavesdropper
};

inline constexpr std::size_t kLinkCount = 6;
inline constexpr std::array<Link, kLinkCount> kAllLinks = {Link::MbsMu, Link::MbsSu, Link::SbsSu,
                                                           Link::SbsMu, Link::MbsEve, Link::SbsEve};

/// Short name used in config files: "Mm", "Ms", "Ss", "Sm", "Me", "Se".
std::string_view link_name(Link link);

/// Average power gains E|h|^2 of the six Rayleigh links.
struct LinkGains {
  double mbs_mu = 1.0;
  double mbs_su = 1.0;
  double sbs_su = 1.0;
  double sbs_mu = 1.0;
  double mbs_eve = 1.0;
  double sbs_eve = 1.0;

  double operator[](Link link) const;
  double& operator[](Link link);

  /// Throws DomainError unless every gain is finite and > 0.
  void validate() const;
};

/// Large-scale description of one link.
struct LinkPathLoss {
  double distance_m = 300.0;
  double exponent = 2.5;
  double small_scale_variance = 1.0;
};

struct LinkGeometry {
  std::array<LinkPathLoss, kLinkCount> links{};

  LinkPathLoss& operator[](Link link) { return links[static_cast<std::size_t>(link)]; }
  const LinkPathLoss& operator[](Link link) const { return links[static_cast<std::size_t>(link)]; }

  void validate() const;
  LinkGains gains() const;

  /// 300 m everywhere except 30 m for SBS-SU; exponent 3.0 on the two
  /// cross-interference links and 2.5 elsewhere; unit small-scale variance.
  static LinkGeometry reference();
};

/// d^{-exponent} * variance. Throws DomainError for d <= 0 or variance <= 0.
double link_gain(double distance_m, double exponent, double small_scale_variance);

/// One fading realization: power |h|^2 and phase per link.
struct FadingDraw {
  std::array<double, kLinkCount> power{};
  std::array<double, kLinkCount> phase{};

  double power_of(Link link) const { return power[static_cast<std::size_t>(link)]; }
  double phase_of(Link link) const { return phase[static_cast<std::size_t>(link)]; }
  std::complex<double> coefficient(Link link) const {
    return std::polar(std::sqrt(power_of(link)), phase_of(link));
  }
};

/// Draws |h|^2 ~ Exp(mean = gain) and an independent uniform phase on
/// [0, 2pi) for every link. Consumes exactly five blocks of `rng`.
FadingDraw sample_fading(const LinkGains& gains, RngStream& rng);

/// Pr(|h_num|^2 / (gamma |h_den|^2 + 1) < u) for exponential powers.
double cdf_interference_ratio(double u, double sigma2_num, double sigma2_den, double gamma);

/// Density of the interference-limited ratio above.
double pdf_interference_ratio(double u, double sigma2_num, double sigma2_den, double gamma);

/// Pr(|h_num|^2 / |h_den|^2 < z) = sigma2_den z / (sigma2_num + sigma2_den z).
double cdf_plain_ratio(double z, double sigma2_num, double sigma2_den);

/// Density of the plain power ratio.
double pdf_plain_ratio(double z, double sigma2_num, double sigma2_den);

}  // namespace secout
