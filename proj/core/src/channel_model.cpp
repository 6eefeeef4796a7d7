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

#include "secout/channel_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "secout/errors.hpp"

namespace secout {
namespace {

void require_positive_gain(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be finite and > 0");
  }
}

}  // namespace

std::string_view link_name(Link link) {
  switch (link) {
    case Link::MbsMu: return "Mm";
    case Link::MbsSu: return "Ms";
    case Link::SbsSu: return "Ss";
    case Link::SbsMu: return "Sm";
    case Link::MbsEve: return "Me";
    case Link::SbsEve: return "Se";
  }
  return "?";
}

double LinkGains::operator[](Link link) const {
  switch (link) {
    case Link::MbsMu: return mbs_mu;
    case Link::MbsSu: return mbs_su;
    case Link::SbsSu: return sbs_su;
    case Link::SbsMu: return sbs_mu;
    case Link::MbsEve: return mbs_eve;
    case Link::SbsEve: return sbs_eve;
  }
  return 0.0;
}

double& LinkGains::operator[](Link link) {
  switch (link) {
    case Link::MbsMu: return mbs_mu;
    case Link::MbsSu: return mbs_su;
    case Link::SbsSu: return sbs_su;
    case Link::SbsMu: return sbs_mu;
    case Link::MbsEve: return mbs_eve;
    case Link::SbsEve: break;
  }
  return sbs_eve;
}

void LinkGains::validate() const {
  for (Link link : kAllLinks) {
    require_positive_gain((*this)[link], ("gain sigma2_" + std::string(link_name(link))).c_str());
  }
}

void LinkGeometry::validate() const {
  for (Link link : kAllLinks) {
    const LinkPathLoss& l = (*this)[link];
    const std::string name(link_name(link));
    require_positive_gain(l.distance_m, ("distance d_" + name).c_str());
    require_positive_gain(l.small_scale_variance, ("variance delta2_" + name).c_str());
    if (!(l.exponent >= 0.0) || !std::isfinite(l.exponent)) {
      throw DomainError("path-loss exponent alpha_" + name + " must be finite and >= 0");
    }
  }
}

LinkGains LinkGeometry::gains() const {
  validate();
  LinkGains g;
  for (Link link : kAllLinks) {
    const LinkPathLoss& l = (*this)[link];
    g[link] = link_gain(l.distance_m, l.exponent, l.small_scale_variance);
  }
  g.validate();
  return g;
}

LinkGeometry LinkGeometry::reference() {
  LinkGeometry geo;
  for (Link link : kAllLinks) geo[link] = LinkPathLoss{300.0, 2.5, 1.0};
  geo[Link::SbsSu].distance_m = 30.0;
  geo[Link::MbsSu].exponent = 3.0;
  geo[Link::SbsMu].exponent = 3.0;
  return geo;
}

double link_gain(double distance_m, double exponent, double small_scale_variance) {
  if (!(distance_m > 0.0)) throw DomainError("link_gain: distance must be > 0");
  if (!(small_scale_variance > 0.0)) throw DomainError("link_gain: small-scale variance must be > 0");
  return std::pow(distance_m, -exponent) * small_scale_variance;
}

FadingDraw sample_fading(const LinkGains& gains, RngStream& rng) {
  FadingDraw draw;
  for (std::size_t i = 0; i < kLinkCount; ++i) {
    draw.power[i] = -gains[kAllLinks[i]] * std::log(rng.uniform_open_zero());
  }
  // Phases use 32-bit resolution: two blocks cover the six links.
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  const auto first = rng.next_block();
  const auto second = rng.next_block();
  const std::array<std::uint32_t, 6> words = {first[0], first[1], first[2],
                                              first[3], second[0], second[1]};
  for (std::size_t i = 0; i < kLinkCount; ++i) {
    draw.phase[i] = kTwoPi * (static_cast<double>(words[i]) * 0x1.0p-32);
  }
  return draw;
}

double cdf_interference_ratio(double u, double sigma2_num, double sigma2_den, double gamma) {
  if (!(u >= 0.0)) throw DomainError("cdf_interference_ratio: u must be >= 0");
  if (std::isinf(u)) return 1.0;
  return 1.0 - sigma2_num / (gamma * sigma2_den * u + sigma2_num) * std::exp(-u / sigma2_num);
}

double pdf_interference_ratio(double u, double sigma2_num, double sigma2_den, double gamma) {
  if (!(u >= 0.0)) throw DomainError("pdf_interference_ratio: u must be >= 0");
  const double denom = gamma * sigma2_den * u + sigma2_num;
  return (gamma * sigma2_num * sigma2_den / (denom * denom) + 1.0 / denom) * std::exp(-u / sigma2_num);
}

double cdf_plain_ratio(double z, double sigma2_num, double sigma2_den) {
  if (!(z >= 0.0)) throw DomainError("cdf_plain_ratio: z must be >= 0");
  if (std::isinf(z)) return 1.0;
  return sigma2_den * z / (sigma2_num + sigma2_den * z);
}

double pdf_plain_ratio(double z, double sigma2_num, double sigma2_den) {
  if (!(z >= 0.0)) throw DomainError("pdf_plain_ratio: z must be >= 0");
  const double denom = sigma2_num + sigma2_den * z;
  return sigma2_num * sigma2_den / (denom * denom);
}

}  // namespace secout
