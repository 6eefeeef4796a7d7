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

#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/expint.hpp>

#include "doctest.h"
#include "secout/errors.hpp"
#include "secout/quadrature.hpp"
#include "secout/special_math.hpp"

using namespace secout;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

// Composite adaptive Simpson, used only as an independent reference.
double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
               double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return simpson(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 50);
}

}  // namespace

TEST_CASE("exp_integral matches reference values") {
  CHECK(rel_err(exp_integral(-1.0), -0.21938393439552027368) < 1e-14);
  CHECK(rel_err(exp_integral(-1e-8), -17.843465089050832587) < 1e-14);
  CHECK(rel_err(exp_integral(-50.0), -3.7832640295504590187e-24) < 1e-13);
  CHECK(rel_err(exp_integral(-700.0), -1.4065187662340329228e-307) < 1e-12);
  CHECK(rel_err(exp_integral(0.5), 0.45421990486317357992) < 1e-13);
  CHECK(rel_err(exp_integral(5.0), 40.185275355803177455) < 1e-13);
  CHECK(rel_err(exp_integral(60.0), 1.9361822139292765388e24) < 1e-13);
}

TEST_CASE("exp_integral at -1 agrees with direct quadrature of the tail integral") {
  // -int_1^inf e^{-t}/t dt, folded onto [0, 1] by t = 1/s.
  const double tail = simpson([](double s) { return s <= 0.0 ? 0.0 : std::exp(-1.0 / s) / s; }, 0.0, 1.0, 1e-13);
  CHECK(rel_err(exp_integral(-1.0), -tail) < 1e-10);
}

TEST_CASE("exp_integral near zero follows the logarithmic series limit") {
  const double u = 1e-8;
  double series = kEulerGamma + std::log(u);
  double term = 1.0;
  for (int k = 1; k <= 20; ++k) {
    term *= -u / k;
    series += term / k;
  }
  CHECK(exp_integral(-u) < -17.0);
  CHECK(rel_err(exp_integral(-u), series) < 1e-14);
}

TEST_CASE("exp_integral agrees with an independent implementation on a dense grid") {
  for (double u = 1e-300; u <= 700.0; u *= 1.37) {
    const double want = boost::math::expint(-u);
    REQUIRE_MESSAGE(rel_err(exp_integral(-u), want) <= 1e-12, "u = " << u);
  }
  for (double x = 1e-6; x <= 700.0; x *= 1.91) {
    REQUIRE_MESSAGE(rel_err(exp_integral(x), boost::math::expint(x)) <= 1e-12, "x = " << x);
  }
}

TEST_CASE("exp_integral is negative, increasing and sandwiched on the negative axis") {
  for (double u = 1e2; u >= 1e-6; u /= 1.2) {
    const double e1 = -exp_integral(-u);
    CHECK(e1 > 0.0);
    CHECK(0.5 * std::exp(-u) * std::log1p(2.0 / u) <= e1);
    CHECK(e1 <= std::exp(-u) * std::log1p(1.0 / u));
  }
  for (double u = 1e-6; u <= 1e2; u *= 1.3) {
    CHECK(exp_integral(-u * 1.3) > exp_integral(-u));
  }
  CHECK(exp_integral(-800.0) == 0.0);
}

TEST_CASE("exp_integral rejects zero and NaN") {
  CHECK_THROWS_AS(exp_integral(0.0), DomainError);
  CHECK_THROWS_AS(exp_integral(std::nan("")), DomainError);
}

TEST_CASE("scaled_exp_integral stays finite where exp(u) overflows") {
  CHECK(rel_err(scaled_exp_integral(1.0), std::exp(1.0) * exp_integral(-1.0)) < 1e-14);
  CHECK(rel_err(scaled_exp_integral(30.0), std::exp(30.0) * exp_integral(-30.0)) < 1e-13);
  const double u = 1e4;
  // e^u E1(u) ~ (1/u)(1 - 1/u + 2/u^2 - ...)
  CHECK(rel_err(-scaled_exp_integral(u), (1.0 - 1.0 / u + 2.0 / (u * u) - 6.0 / (u * u * u)) / u) < 1e-12);
}

TEST_CASE("inner_inverse_square_integral") {
  SUBCASE("reference interval") {
    CHECK(rel_err(inner_inverse_square_integral(-2.0, -1.0), 2.0828703186396735297) < 1e-12);
    const double oracle = simpson([](double t) { return std::exp(-t) / (t * t); }, -2.0, -1.0, 1e-12);
    CHECK(rel_err(inner_inverse_square_integral(-2.0, -1.0), oracle) < 1e-10);
  }
  SUBCASE("wide interval reaching towards the singularity") {
    CHECK(rel_err(inner_inverse_square_integral(-30.0, -1e-3), 12757391030.455498362) < 1e-11);
  }
  SUBCASE("vanishing interval tends to the midpoint value") {
    const double b = -1.5;
    for (double eps : {1e-4, 1e-6, 1e-9}) {
      const double a = b - eps;
      const double width = b - a;  // eps as actually represented
      const double expected = width * std::exp(-b) / (b * b);
      CHECK(rel_err(inner_inverse_square_integral(a, b), expected) < 2.0 * eps);
    }
  }
  SUBCASE("antiderivative route agrees") {
    const auto anti = [](double t) { return -std::exp(-t) / t - exp_integral(-t); };
    for (auto [a, b] : std::vector<std::pair<double, double>>{{-5.0, -0.5}, {-40.0, -20.0}, {-3.0, -2.9}}) {
      CHECK(rel_err(inner_inverse_square_integral(a, b), anti(b) - anti(a)) < 1e-9);
    }
  }
  SUBCASE("additive over adjacent intervals") {
    const double whole = inner_inverse_square_integral(-12.0, -0.01);
    const double split = inner_inverse_square_integral(-12.0, -0.7) + inner_inverse_square_integral(-0.7, -0.01);
    CHECK(rel_err(split, whole) < 1e-12);
  }
  SUBCASE("domain errors") {
    CHECK_THROWS_AS(inner_inverse_square_integral(-1.0, 0.0), DomainError);
    CHECK_THROWS_AS(inner_inverse_square_integral(-1.0, 2.0), DomainError);
    CHECK_THROWS_AS(inner_inverse_square_integral(-1.0, -2.0), DomainError);
  }
}

TEST_CASE("integrate_exp_weighted reproduces factorial moments") {
  for (QuadratureMethod method : {QuadratureMethod::FixedLaguerre, QuadratureMethod::AdaptiveTransformed}) {
    QuadratureSpec spec;
    spec.method = method;
    double factorial = 1.0;
    for (int n = 0; n <= 8; ++n) {
      if (n > 0) factorial *= n;
      const QuadratureResult r = integrate_exp_weighted([n](double x) { return std::pow(x, n); }, spec);
      CHECK_MESSAGE(rel_err(r.value, factorial) <= 1e-10, "n = " << n);
    }
  }
}

TEST_CASE("integrate_exp_weighted handles a slowly decaying rational") {
  const double reference = 0.59634736232319407434;  // e * E1(1)
  const QuadratureResult r = integrate_exp_weighted([](double x) { return 1.0 / (1.0 + x); });
  CHECK(rel_err(r.value, reference) < 1e-10);
  CHECK(std::abs(r.value - reference) <= std::max(r.error_bound, 1e-15));

  QuadratureSpec bigger;
  bigger.node_count = 640;
  CHECK(rel_err(integrate_exp_weighted([](double x) { return 1.0 / (1.0 + x); }, bigger).value, reference) < 1e-10);
}

TEST_CASE("integrate_exp_weighted copes with a 1/x-tempered integrand near the origin") {
  // f(x) = (1 - e^{-x})/x; the weighted integral is ln 2.
  const auto f = [](double x) { return -std::expm1(-x) / x; };
  CHECK(rel_err(integrate_exp_weighted(f).value, std::log(2.0)) < 1e-10);
  // log(x) is integrable against e^{-x}; the result is -gamma. The origin is never sampled.
  const QuadratureResult r = integrate_exp_weighted([](double x) {
    REQUIRE(x > 0.0);
    return std::log(x);
  });
  CHECK(rel_err(r.value, -kEulerGamma) < 1e-9);
}

TEST_CASE("doubling the rule changes accepted results by less than the reported bound") {
  const std::vector<std::function<double(double)>> integrands = {
      [](double x) { return std::cos(x); },
      [](double x) { return 1.0 / (1.0 + x * x); },
      [](double x) { return std::exp(-0.3 * x) * x * x; },
  };
  for (const auto& f : integrands) {
    QuadratureSpec spec;
    const QuadratureResult base = integrate_exp_weighted(f, spec);
    spec.node_count *= 2;
    const QuadratureResult doubled = integrate_exp_weighted(f, spec);
    CHECK(std::abs(doubled.value - base.value) <= base.error_bound + 1e-15);
  }
}

TEST_CASE("integrate_exp_weighted reports the failing abscissa") {
  try {
    integrate_exp_weighted([](double x) { return x > 2.0 ? std::numeric_limits<double>::infinity() : 1.0; });
    FAIL("expected EvaluationError");
  } catch (const EvaluationError& e) {
    CHECK(e.abscissa() > 2.0);
  }
}

TEST_CASE("integrate_adaptive gives up with the best estimate when refinements run out") {
  QuadratureSpec spec;
  spec.method = QuadratureMethod::AdaptiveTransformed;
  spec.relative_tolerance = 1e-14;
  spec.max_refinements = 3;
  try {
    integrate_exp_weighted([](double x) { return std::sin(40.0 * x) * std::sqrt(x); }, spec);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(std::isfinite(e.best_estimate()));
    CHECK(e.error_estimate() > 0.0);
  }
}

TEST_CASE("QuadratureSpec validation") {
  QuadratureSpec spec;
  spec.node_count = 1;
  CHECK_THROWS_AS(spec.validate(), DomainError);
  spec = {};
  spec.relative_tolerance = 0.0;
  CHECK_THROWS_AS(spec.validate(), DomainError);
  spec = {};
  spec.max_refinements = 0;
  CHECK_THROWS_AS(integrate_exp_weighted([](double) { return 1.0; }, spec), DomainError);
}

TEST_CASE("finite-interval adaptive rule agrees with an independent Gauss-Kronrod") {
  const auto f = [](double t) { return std::exp(-t) / (t * t); };
  const double mine = integrate_adaptive(f, -9.0, -0.05, 1e-13).value;
  const double boost_value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, -9.0, -0.05, 20, 1e-14);
  CHECK(rel_err(mine, boost_value) < 1e-12);
}

TEST_CASE("Gauss-Laguerre rule is normalized") {
  for (int n : {2, 8, 64, 128}) {
    const LaguerreRule& rule = gauss_laguerre_rule(n);
    REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
    double total = 0.0;
    for (double w : rule.weights) total += w;
    CHECK(rel_err(total, 1.0) < 1e-13);
  }
}
