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

#include "secout/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <queue>
#include <sstream>

#include "secout/errors.hpp"

namespace secout {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kMin = std::numeric_limits<double>::min();

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1] (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

double checked_eval(const Integrand& f, double x, double reported_x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    std::ostringstream msg;
    msg << "integrand is not finite at x = " << reported_x;
    throw EvaluationError(msg.str(), reported_x);
  }
  return y;
}

// One 15-point Kronrod panel with the QUADPACK error heuristic. `report`
// maps a panel abscissa back to the caller's variable for error messages.
template <typename Report>
Segment kronrod_panel(const Integrand& f, double a, double b, const Report& report, int& evals) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 15> fv{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv[2 * j] = checked_eval(f, center - dx, report(center - dx));
    fv[2 * j + 1] = checked_eval(f, center + dx, report(center + dx));
  }
  fv[14] = checked_eval(f, center, report(center));
  evals += 15;

  double kronrod = kWgk[7] * fv[14];
  double gauss = kWg[3] * fv[14];
  double abs_sum = std::abs(kronrod);
  for (int j = 0; j < 7; ++j) {
    const double pair = fv[2 * j] + fv[2 * j + 1];
    kronrod += kWgk[j] * pair;
    abs_sum += kWgk[j] * (std::abs(fv[2 * j]) + std::abs(fv[2 * j + 1]));
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double asc = kWgk[7] * std::abs(fv[14] - mean);
  for (int j = 0; j < 7; ++j) {
    asc += kWgk[j] * (std::abs(fv[2 * j] - mean) + std::abs(fv[2 * j + 1] - mean));
  }
  const double result = kronrod * half;
  const double result_abs = abs_sum * std::abs(half);
  const double result_asc = asc * std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (result_asc != 0.0 && err != 0.0) {
    err = result_asc * std::min(1.0, std::pow(200.0 * err / result_asc, 1.5));
  }
  if (result_abs > kMin / (50.0 * kEps)) err = std::max(50.0 * kEps * result_abs, err);
  return {a, b, result, err};
}

template <typename Report>
QuadratureResult adaptive_core(const Integrand& f, double a, double b, double rel_tol, double abs_tol,
                               int max_subdivisions, std::vector<double> cuts, const Report& report) {
  cuts.push_back(a);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.erase(std::remove_if(cuts.begin(), cuts.end(), [&](double c) { return c < a || c > b; }),
             cuts.end());

  int evals = 0;
  std::priority_queue<Segment> active;
  std::vector<Segment> settled;
  double value = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Segment s = kronrod_panel(f, cuts[i], cuts[i + 1], report, evals);
    value += s.value;
    error += s.error;
    active.push(s);
  }

  int splits = 0;
  while (!active.empty() && error > std::max(abs_tol, rel_tol * std::abs(value))) {
    if (splits >= max_subdivisions) {
      throw ConvergenceError("adaptive quadrature did not reach the requested tolerance", value,
                             error);
    }
    Segment worst = active.top();
    active.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        std::abs(worst.b - worst.a) <= 100.0 * kEps * std::max(std::abs(mid), kMin)) {
      // Cannot be bisected further in double precision.
      settled.push_back(worst);
      continue;
    }
    const Segment left = kronrod_panel(f, worst.a, mid, report, evals);
    const Segment right = kronrod_panel(f, mid, worst.b, report, evals);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    active.push(left);
    active.push(right);
    ++splits;
  }

  // Re-add from scratch to drop the drift of the running sums.
  QuadratureResult out;
  out.evaluations = evals;
  for (; !active.empty(); active.pop()) settled.push_back(active.top());
  std::sort(settled.begin(), settled.end(), [](const Segment& l, const Segment& r) { return l.a < r.a; });
  for (const Segment& s : settled) {
    out.value += s.value;
    out.error_bound += s.error;
  }
  return out;
}

LaguerreRule build_laguerre(int n) {
  LaguerreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  std::vector<long double> x(static_cast<std::size_t>(n));
  long double z = 0.0L;
  for (int i = 0; i < n; ++i) {
    if (i == 0) {
      z = 3.0L / (1.0L + 2.4L * n);
    } else if (i == 1) {
      z += 15.0L / (1.0L + 2.5L * n);
    } else {
      const long double ai = i - 1;
      z += (1.0L + 2.55L * ai) / (1.9L * ai) * (z - x[static_cast<std::size_t>(i - 2)]);
    }
    long double p1 = 0.0L;
    long double p2 = 0.0L;
    long double pp = 0.0L;
    for (int it = 0; it < 100; ++it) {
      p1 = 1.0L;
      p2 = 0.0L;
      for (int j = 1; j <= n; ++j) {
        const long double p3 = p2;
        p2 = p1;
        p1 = ((2.0L * j - 1.0L - z) * p2 - (j - 1.0L) * p3) / j;
      }
      pp = (n * p1 - n * p2) / z;
      const long double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) <= 1e-18L * std::fabs(z)) break;
    }
    x[static_cast<std::size_t>(i)] = z;
    rule.nodes[static_cast<std::size_t>(i)] = static_cast<double>(z);
    rule.weights[static_cast<std::size_t>(i)] = static_cast<double>(-1.0L / (pp * n * p2));
  }
  return rule;
}

double apply_rule(const LaguerreRule& rule, const Integrand& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double w = rule.weights[i];
    if (w == 0.0) continue;
    sum += w * checked_eval(f, rule.nodes[i], rule.nodes[i]);
  }
  return sum;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (node_count < 2) throw DomainError("QuadratureSpec: node_count must be >= 2");
  if (!(relative_tolerance > 0.0)) throw DomainError("QuadratureSpec: relative_tolerance must be > 0");
  if (max_refinements < 1) throw DomainError("QuadratureSpec: max_refinements must be >= 1");
  for (double bp : breakpoints) {
    if (!(bp > 0.0) || !std::isfinite(bp)) throw DomainError("QuadratureSpec: breakpoints must be finite and > 0");
  }
}

const LaguerreRule& gauss_laguerre_rule(int n) {
  if (n < 2) throw DomainError("gauss_laguerre_rule: n must be >= 2");
  static std::mutex mutex;
  static std::map<int, LaguerreRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_laguerre(n)).first;
  return it->second;
}

QuadratureResult integrate_adaptive(const Integrand& f, double a, double b, double rel_tolerance,
                                    double abs_tolerance, int max_subdivisions,
                                    const std::vector<double>& breakpoints) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("integrate_adaptive: requires finite a < b");
  }
  return adaptive_core(f, a, b, rel_tolerance, abs_tolerance, max_subdivisions, breakpoints,
                       [](double x) { return x; });
}

QuadratureResult integrate_semi_infinite(const Integrand& f, double rel_tolerance, double abs_tolerance,
                                         int max_subdivisions, const std::vector<double>& breakpoints) {
  const Integrand mapped = [&f](double t) {
    const double s = 1.0 - t;
    const double x = t / s;
    const double y = f(x);
    if (y == 0.0) return 0.0;
    return y / (s * s);
  };
  std::vector<double> cuts;
  cuts.reserve(breakpoints.size());
  for (double x : breakpoints) {
    if (x > 0.0 && std::isfinite(x)) cuts.push_back(x / (1.0 + x));
  }
  return adaptive_core(mapped, 0.0, 1.0, rel_tolerance, abs_tolerance, max_subdivisions, cuts,
                       [](double t) { return t / (1.0 - t); });
}

QuadratureResult integrate_exp_weighted(const Integrand& f, const QuadratureSpec& spec) {
  spec.validate();
  const auto adaptive = [&]() {
    const Integrand weighted = [&f](double x) {
      const double w = std::exp(-x);
      if (w == 0.0) return 0.0;
      return f(x) * w;
    };
    return integrate_semi_infinite(weighted, spec.relative_tolerance, 0.0, spec.max_refinements,
                                   spec.breakpoints);
  };
  if (spec.method == QuadratureMethod::AdaptiveTransformed) return adaptive();

  const double coarse = apply_rule(gauss_laguerre_rule(spec.node_count), f);
  const double fine = apply_rule(gauss_laguerre_rule(2 * spec.node_count), f);
  const double diff = std::abs(fine - coarse);
  if (diff <= spec.relative_tolerance * std::abs(fine)) {
    QuadratureResult r;
    r.value = fine;
    r.error_bound = std::max(diff, 4.0 * kEps * std::abs(fine));
    r.evaluations = 3 * spec.node_count;
    return r;
  }
  QuadratureResult r = adaptive();
  r.evaluations += 3 * spec.node_count;
  return r;
}

std::vector<double> log_spaced_breakpoints(double lo, double hi, int per_decade) {
  std::vector<double> out;
  if (!(lo > 0.0) || !(hi > lo) || per_decade < 1) return out;
  const double step = std::log(10.0) / per_decade;
  const double span = std::log(hi / lo);
  const int count = static_cast<int>(std::ceil(span / step));
  out.reserve(static_cast<std::size_t>(count) + 1);
  for (int i = 0; i <= count; ++i) out.push_back(lo * std::exp(std::min(i * step, span)));
  return out;
}

}  // namespace secout
