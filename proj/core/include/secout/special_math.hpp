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

namespace secout {

/// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// Standard exponential integral Ei(x).
///
/// For x < 0 this is -E1(-x), the convergent integral -int_{-x}^inf e^{-t}/t dt.
/// For x > 0 it is the Cauchy principal value. Every closed form in this
/// library calls it as Ei(-u) with u > 0, and that branch is accurate to a
/// few ulp over [-700, -1e-300]. Arguments above ~709.78 overflow to +inf.
///
/// Throws DomainError for x == 0 or NaN.
double exp_integral(double x);

/// exp(u) * Ei(-u) for u > 0, without the overflow/underflow of the naive
/// product. Behaves like -1/u for large u and like ln(u) + gamma for small u.
double scaled_exp_integral(double u);

/// int_a^b e^{-t} / t^2 dt for a < b < 0.
///
/// Evaluated through the antiderivative -e^{-t}/t - Ei(-t); falls back to
/// adaptive quadrature when the endpoint difference loses more than 1e-8 of
/// relative precision. Throws DomainError unless a < b < 0.
double inner_inverse_square_integral(double a, double b);

}  // namespace secout
