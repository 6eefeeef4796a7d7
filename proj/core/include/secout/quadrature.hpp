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

#include <functional>
#include <vector>

namespace secout {

using Integrand = std::function<double(double)>;

struct QuadratureResult {
  double value = 0.0;
  double error_bound = 0.0;
  int evaluations = 0;
};

enum class QuadratureMethod {
  /// Gauss-Laguerre rule at node_count, cross-checked against 2*node_count.
  /// Escalates to AdaptiveTransformed when the two disagree.
  FixedLaguerre,
  /// Gauss-Kronrod (7/15) global adaptive bisection on the map x = t/(1-t).
  AdaptiveTransformed,
};

struct QuadratureSpec {
  QuadratureMethod method = QuadratureMethod::FixedLaguerre;
  int node_count = 64;
  double relative_tolerance = 1e-10;
  int max_refinements = 4000;
  /// Interior abscissae (x > 0) where the integrand changes scale. Only the
  /// adaptive path uses them; integrands with features far below the first
  /// Laguerre node need them to be seen at all.
  std::vector<double> breakpoints;

  /// Throws DomainError on node_count < 2, non-positive tolerance or refinements.
  void validate() const;
};

/// Nodes and weights of the n-point Gauss-Laguerre rule (weight e^{-x}).
struct LaguerreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached n-point rule; thread-safe.
const LaguerreRule& gauss_laguerre_rule(int n);

/// int_0^inf f(x) e^{-x} dx. f is never evaluated at x = 0.
///
/// Throws EvaluationError if f is non-finite at a node and ConvergenceError
/// (carrying the best estimate) when max_refinements is exhausted.
QuadratureResult integrate_exp_weighted(const Integrand& f, const QuadratureSpec& spec = {});

/// int_a^b f(x) dx by global adaptive Gauss-Kronrod. Interior breakpoints,
/// if any, seed the initial partition. Stops when the summed error estimate
/// is below max(abs_tolerance, rel_tolerance * |value|).
QuadratureResult integrate_adaptive(const Integrand& f, double a, double b, double rel_tolerance,
                                    double abs_tolerance = 0.0, int max_subdivisions = 4000,
                                    const std::vector<double>& breakpoints = {});

/// int_0^inf f(x) dx through x = t/(1-t); breakpoints are given in x.
QuadratureResult integrate_semi_infinite(const Integrand& f, double rel_tolerance,
                                         double abs_tolerance = 0.0, int max_subdivisions = 4000,
                                         const std::vector<double>& breakpoints = {});

/// Geometric ladder of points from lo to hi, `per_decade` per factor of ten.
std::vector<double> log_spaced_breakpoints(double lo, double hi, int per_decade = 1);

}  // namespace secout
