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

#include "secout/special_math.hpp"

#include <cmath>
#include <limits>

#include "secout/errors.hpp"
#include "secout/quadrature.hpp"

namespace secout {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Alternating series part of E1: sum_{k>=1} (-1)^{k+1} u^k / (k k!).
// Used for u <= 1 where the terms shrink fast and do not cancel badly.
double e1_series_tail(double u) {
  double term = u;  // u^k / k!
  double sum = u;
  for (int k = 2; k < 200; ++k) {
    term *= -u / k;
    const double add = term / k;
    sum += add;
    if (std::abs(add) < kEps * std::abs(sum)) break;
  }
  return sum;
}

// e^u E1(u) for u > 1 via the modified Lentz continued fraction.
double e1_scaled_continued_fraction(double u) {
  constexpr double kTiny = 1e-300;
  double b = u + 1.0;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return h;
}

double e1(double u) {
  if (u <= 1.0) return -kEulerGamma - std::log(u) + e1_series_tail(u);
  return std::exp(-u) * e1_scaled_continued_fraction(u);
}

// Principal value Ei(x), x > 0.
double ei_positive(double x) {
  if (x <= 40.0) {
    double term = 1.0;
    double sum = 0.0;
    for (int k = 1; k < 500; ++k) {
      term *= x / k;
      const double add = term / k;
      sum += add;
      if (add < kEps * sum) break;
    }
    return kEulerGamma + std::log(x) + sum;
  }
  // Asymptotic series; at x > 40 the smallest term is below 1e-17.
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double next = term * k / x;
    if (next > term) break;
    term = next;
    sum += term;
    if (term < kEps * sum) break;
  }
  if (x > 709.0) {
    // e^x overflows right around here; keep the ratio finite as long as possible.
    return std::exp(x - std::log(x)) * sum;
  }
  return std::exp(x) / x * sum;
}

}  // namespace

double exp_integral(double x) {
  if (std::isnan(x)) throw DomainError("exp_integral: NaN argument");
  if (x == 0.0) throw DomainError("exp_integral: logarithmic singularity at x = 0");
  if (x < 0.0) {
    if (std::isinf(x)) return 0.0;
    return -e1(-x);
  }
  if (std::isinf(x)) return x;
  return ei_positive(x);
}

double scaled_exp_integral(double u) {
  if (!(u > 0.0)) throw DomainError("scaled_exp_integral: requires u > 0");
  if (std::isinf(u)) return -0.0;
  if (u <= 1.0) return -std::exp(u) * (-kEulerGamma - std::log(u) + e1_series_tail(u));
  return -e1_scaled_continued_fraction(u);
}

double inner_inverse_square_integral(double a, double b) {
  if (std::isnan(a) || std::isnan(b) || !(a < b) || !(b < 0.0)) {
    throw DomainError("inner_inverse_square_integral: requires a < b < 0");
  }
  // F(t) = -e^{-t}/t - Ei(-t); both endpoints have -t > 0.
  const auto antiderivative = [](double t) { return -std::exp(-t) / t - exp_integral(-t); };
  const double fa = antiderivative(a);
  const double fb = antiderivative(b);
  const double diff = fb - fa;
  const double magnitude = std::abs(fa) + std::abs(fb);
  if (std::isfinite(diff) && diff > 0.0 && 4.0 * kEps * magnitude <= 1e-8 * diff) return diff;

  const auto integrand = [](double t) { return std::exp(-t) / (t * t); };
  return integrate_adaptive(integrand, a, b, 1e-13).value;
}

}  // namespace secout
