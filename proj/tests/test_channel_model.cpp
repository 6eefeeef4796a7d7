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
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "secout/channel_model.hpp"
#include "secout/errors.hpp"
#include "secout/rng.hpp"

using namespace secout;

namespace {

// Largest gap between the empirical CDF of `samples` and `cdf`.
template <typename Cdf>
double ks_statistic(std::vector<double> samples, Cdf cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, std::abs(f - i / n), std::abs((i + 1) / n - f)});
  }
  return d;
}

LinkGains distinct_gains() {
  LinkGains g;
  g.mbs_mu = 1.0;
  g.mbs_su = 0.05;
  g.sbs_su = 3.0;
  g.sbs_mu = 0.2;
  g.mbs_eve = 0.7;
  g.sbs_eve = 1.3;
  return g;
}

}  // namespace

TEST_CASE("philox4x32-10 known answers") {
  using Block = std::array<std::uint32_t, 4>;
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("rng streams are reproducible and distinct") {
  RngStream a(2024, 3), b(2024, 3), c(2024, 4), d(2025, 3);
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x != c.uniform());
    CHECK(x != d.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  CHECK(a.position() == 50);
  const RngStream parent(9, 0);
  CHECK(parent.substream(1).index() == parent.substream(1).index());
  CHECK(parent.substream(1).index() != parent.substream(2).index());
}

TEST_CASE("link_gain") {
  CHECK(link_gain(1.0, 3.7, 1.0) == 1.0);
  CHECK(link_gain(300.0, 2.5, 1.0) == doctest::Approx(6.415002990995841e-07).epsilon(1e-12));
  CHECK(link_gain(30.0, 2.5, 1.0) == doctest::Approx(2.0286020648339044e-04).epsilon(1e-12));
  CHECK(link_gain(30.0, 2.5, 1.0) / link_gain(300.0, 2.5, 1.0) == doctest::Approx(std::pow(10.0, 2.5)));
  CHECK(link_gain(10.0, 2.0, 4.0) == doctest::Approx(0.04));
  CHECK_THROWS_AS(link_gain(0.0, 2.5, 1.0), DomainError);
  CHECK_THROWS_AS(link_gain(-1.0, 2.5, 1.0), DomainError);
  CHECK_THROWS_AS(link_gain(10.0, 2.5, 0.0), DomainError);
}

TEST_CASE("reference geometry") {
  const LinkGains g = LinkGeometry::reference().gains();
  CHECK(g.mbs_mu == doctest::Approx(std::pow(300.0, -2.5)));
  CHECK(g.mbs_eve == g.mbs_mu);
  CHECK(g.sbs_eve == g.mbs_mu);
  CHECK(g.sbs_su == doctest::Approx(std::pow(30.0, -2.5)));
  CHECK(g.mbs_su == doctest::Approx(std::pow(300.0, -3.0)));
  CHECK(g.sbs_mu == g.mbs_su);
}

TEST_CASE("gain and geometry validation") {
  LinkGains g = distinct_gains();
  g.sbs_eve = 0.0;
  CHECK_THROWS_AS(g.validate(), DomainError);
  g.sbs_eve = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(g.validate(), DomainError);
  LinkGeometry geo = LinkGeometry::reference();
  geo[Link::MbsEve].exponent = -1.0;
  CHECK_THROWS_AS(geo.validate(), DomainError);
  geo = LinkGeometry::reference();
  geo[Link::SbsSu].distance_m = 0.0;
  CHECK_THROWS_AS(geo.gains(), DomainError);
}

TEST_CASE("sample_fading is bit-identical for a fixed stream") {
  const LinkGains g = distinct_gains();
  RngStream a(11, 5), b(11, 5);
  for (int i = 0; i < 1000; ++i) {
    const FadingDraw x = sample_fading(g, a);
    const FadingDraw y = sample_fading(g, b);
    CHECK(x.power == y.power);
    CHECK(x.phase == y.phase);
  }
  CHECK(a.position() == 5000);
}

TEST_CASE("sample_fading powers have the configured means") {
  const LinkGains g = distinct_gains();
  RngStream rng(1, 0);
  constexpr int n = 1'000'000;
  std::array<double, kLinkCount> sum{};
  for (int i = 0; i < n; ++i) {
    const FadingDraw d = sample_fading(g, rng);
    for (std::size_t k = 0; k < kLinkCount; ++k) sum[k] += d.power[k];
  }
  for (Link link : kAllLinks) {
    const double mean = sum[static_cast<std::size_t>(link)] / n;
    const double stderr_mean = g[link] / std::sqrt(static_cast<double>(n));
    CHECK_MESSAGE(std::abs(mean - g[link]) < 4.0 * stderr_mean, link_name(link));
  }
}

TEST_CASE("sample_fading magnitudes and phases pass Kolmogorov-Smirnov") {
  const LinkGains g = distinct_gains();
  RngStream rng(77, 1);
  constexpr std::size_t n = 200'000;
  std::array<std::vector<double>, kLinkCount> power, phase;
  for (std::size_t i = 0; i < n; ++i) {
    const FadingDraw d = sample_fading(g, rng);
    for (std::size_t k = 0; k < kLinkCount; ++k) {
      power[k].push_back(d.power[k]);
      phase[k].push_back(d.phase[k]);
    }
  }
  // Asymptotic critical value at significance 0.01.
  const double critical = 1.628 / std::sqrt(static_cast<double>(n));
  for (Link link : kAllLinks) {
    const std::size_t k = static_cast<std::size_t>(link);
    const double mean = g[link];
    CHECK_MESSAGE(ks_statistic(power[k], [mean](double x) { return -std::expm1(-x / mean); }) < critical,
                  link_name(link));
    CHECK_MESSAGE(ks_statistic(phase[k], [](double t) { return t / (2.0 * std::numbers::pi); }) < critical,
                  link_name(link));
    CHECK(*std::min_element(phase[k].begin(), phase[k].end()) >= 0.0);
    CHECK(*std::max_element(phase[k].begin(), phase[k].end()) < 2.0 * std::numbers::pi);
  }
}

TEST_CASE("empirical CDF of |h_Mm|^2 over a million draws") {
  LinkGains g = distinct_gains();
  RngStream rng(3, 0);
  std::vector<double> x;
  x.reserve(1'000'000);
  for (int i = 0; i < 1'000'000; ++i) x.push_back(sample_fading(g, rng).power_of(Link::MbsMu));
  CHECK(ks_statistic(x, [&](double v) { return -std::expm1(-v / g.mbs_mu); }) < 0.002);
}

TEST_CASE("coefficient combines magnitude and phase") {
  FadingDraw d;
  d.power[static_cast<std::size_t>(Link::SbsMu)] = 4.0;
  d.phase[static_cast<std::size_t>(Link::SbsMu)] = std::numbers::pi / 2;
  const auto h = d.coefficient(Link::SbsMu);
  CHECK(h.real() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(h.imag() == doctest::Approx(2.0));
  CHECK(std::norm(h) == doctest::Approx(4.0));
}

TEST_CASE("interference-ratio distribution") {
  CHECK(cdf_interference_ratio(0.0, 1.0, 1.0, 1.0) == 0.0);
  CHECK(cdf_interference_ratio(std::numeric_limits<double>::infinity(), 1.0, 1.0, 1.0) == 1.0);
  CHECK(cdf_interference_ratio(1e6, 2.0, 0.5, 3.0) == doctest::Approx(1.0));
  CHECK(cdf_interference_ratio(1.0, 1.0, 1.0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0) / 2.0).epsilon(1e-14));
  CHECK_THROWS_AS(cdf_interference_ratio(-0.1, 1.0, 1.0, 1.0), DomainError);

  // Sampled check of the same value.
  RngStream rng(5, 0);
  const LinkGains unit{1, 1, 1, 1, 1, 1};
  int hits = 0;
  constexpr int n = 2'000'000;
  for (int i = 0; i < n; ++i) {
    const FadingDraw d = sample_fading(unit, rng);
    if (d.power_of(Link::MbsMu) / (d.power_of(Link::SbsMu) + 1.0) < 1.0) ++hits;
  }
  const double p = 1.0 - std::exp(-1.0) / 2.0;
  CHECK(std::abs(static_cast<double>(hits) / n - p) < 4.0 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("plain-ratio distribution") {
  CHECK(cdf_plain_ratio(0.0, 1.0, 1.0) == 0.0);
  CHECK(cdf_plain_ratio(1.0, 1.0, 1.0) == 0.5);
  CHECK(cdf_plain_ratio(1.0, 2.0, 1.0) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(cdf_plain_ratio(-1.0, 1.0, 1.0), DomainError);
}

TEST_CASE("analytic CDFs are monotone with the right limits and match their densities") {
  const std::vector<std::array<double, 3>> params = {{1.0, 1.0, 1.0}, {0.3, 2.0, 10.0}, {5.0, 0.1, 0.5}};
  for (const auto& p : params) {
    double prev_i = 0.0, prev_p = 0.0;
    for (double u = 0.0; u <= 50.0; u += 0.05) {
      const double ci = cdf_interference_ratio(u, p[0], p[1], p[2]);
      const double cp = cdf_plain_ratio(u, p[0], p[1]);
      CHECK(ci >= prev_i);
      CHECK(cp >= prev_p);
      prev_i = ci;
      prev_p = cp;
    }
    CHECK(cdf_interference_ratio(1e9, p[0], p[1], p[2]) == doctest::Approx(1.0));
    CHECK(cdf_plain_ratio(1e12, p[0], p[1]) == doctest::Approx(1.0));

    constexpr double h = 1e-5;
    for (double u = 0.01; u <= 10.0; u *= 1.5) {
      const double di = (cdf_interference_ratio(u + h, p[0], p[1], p[2]) - cdf_interference_ratio(u - h, p[0], p[1], p[2])) / (2 * h);
      const double dp = (cdf_plain_ratio(u + h, p[0], p[1]) - cdf_plain_ratio(u - h, p[0], p[1])) / (2 * h);
      // Scaled by the density where it exceeds one: the difference quotient's own
      // truncation error grows with curvature.
      const double pi = pdf_interference_ratio(u, p[0], p[1], p[2]);
      const double pp = pdf_plain_ratio(u, p[0], p[1]);
      CHECK(std::abs(di - pi) < 1e-6 * std::max(1.0, pi));
      CHECK(std::abs(dp - pp) < 1e-6 * std::max(1.0, pp));
    }
  }
}
