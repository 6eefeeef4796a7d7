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

#include <benchmark/benchmark.h>

#include "secout/special_math.hpp"

namespace {

void BM_ExpIntegralSeries(benchmark::State& state) {
  double x = -0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(secout::exp_integral(x));
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_ExpIntegralSeries);

void BM_ExpIntegralContinuedFraction(benchmark::State& state) {
  double x = -25.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(secout::exp_integral(x));
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_ExpIntegralContinuedFraction);

void BM_ScaledExpIntegral(benchmark::State& state) {
  double u = 3e4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(secout::scaled_exp_integral(u));
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_ScaledExpIntegral);

}  // namespace
