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

#include "secout/schemes_analytic.hpp"
#include "secout/schemes_montecarlo.hpp"

namespace {

using namespace secout;

SystemConfig at_db(double db) {
  SystemConfig cfg;
  cfg.snr_macro = db_to_linear(db);
  return cfg;
}

void BM_IlKernel(benchmark::State& state) {
  const KernelParams p = il_macro_params(at_db(100.0), LinkGeometry::reference().gains());
  for (auto _ : state) benchmark::DoNotOptimize(il_kernel(p));
}
BENCHMARK(BM_IlKernel);

void BM_SopIcMacro(benchmark::State& state) {
  const SystemConfig cfg = at_db(static_cast<double>(state.range(0)));
  const LinkGains g{1.0, 1.0, 1.0, 0.2, 1.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(sop_ic_macro(cfg, g));
}
BENCHMARK(BM_SopIcMacro)->Arg(40)->Arg(100)->Arg(160)->Unit(benchmark::kMicrosecond);

void BM_SopIcSmall(benchmark::State& state) {
  const SystemConfig cfg = at_db(100.0);
  const LinkGains g = LinkGeometry::reference().gains();
  for (auto _ : state) benchmark::DoNotOptimize(sop_ic_small(cfg, g));
}
BENCHMARK(BM_SopIcSmall)->Unit(benchmark::kMicrosecond);

void BM_SampleFading(benchmark::State& state) {
  const LinkGains g = LinkGeometry::reference().gains();
  RngStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sample_fading(g, rng));
}
BENCHMARK(BM_SampleFading);

void BM_EstimateSop(benchmark::State& state) {
  const SystemConfig cfg = at_db(100.0);
  const LinkGains g = LinkGeometry::reference().gains();
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_sop(Scheme::Ic, Cell::Small, cfg, g, n, RngStream(1, 0)));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_EstimateSop)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

}  // namespace
