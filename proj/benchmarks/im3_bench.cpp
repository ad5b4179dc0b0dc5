// SPDX-License-Identifier: Apache-2.0
//
// im3-kit: third-order intermodulation ACI analysis for multicarrier systems
// Copyright (C) 2026 The im3-kit Authors
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
// ------------------------------------------------------------------------

#include <benchmark/benchmark.h>

#include "im3/closed_form.hpp"
#include "im3/im3_engine.hpp"
#include "im3/qpsk_sim.hpp"
#include "im3/tone_oracle.hpp"

#include <algorithm>
#include <vector>

namespace
{

im3::ChannelPlan equal_plan(int N)
{
    return im3::ChannelPlan(static_cast<double>(std::max(16, N)), 1.0,
                            std::vector<double>(static_cast<std::size_t>(N), 1.0));
}

void BM_EnumerateProducts(benchmark::State &state)
{
    const int N = static_cast<int>(state.range(0));
    const auto plan = equal_plan(N);
    for (auto _ : state)
        benchmark::DoNotOptimize(im3::enumerate_products(plan, (N + 1) / 2));
}
BENCHMARK(BM_EnumerateProducts)->Arg(9)->Arg(99)->Arg(999);

void BM_AciProfile(benchmark::State &state)
{
    const auto plan = equal_plan(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(im3::aci_profile(plan, {}));
}
BENCHMARK(BM_AciProfile)->Arg(31)->Arg(99)->Unit(benchmark::kMillisecond);

void BM_ClosedFormProfile(benchmark::State &state)
{
    const int N = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(im3::closed_form::normalized_profile(N));
}
BENCHMARK(BM_ClosedFormProfile)->Arg(99)->Arg(9999);

void BM_ToneOracleTrials(benchmark::State &state)
{
    const auto plan = equal_plan(static_cast<int>(state.range(0)));
    const auto grid = im3::SimulationGrid::for_plan(plan);
    constexpr int trials = 100;
    for (auto _ : state)
        benchmark::DoNotOptimize(im3::measure_aci_profile_mc(plan, {}, trials, 1, grid));
    state.SetItemsProcessed(state.iterations() * trials);
}
BENCHMARK(BM_ToneOracleTrials)->Arg(9)->Arg(31)->Unit(benchmark::kMillisecond);

void BM_QpskSynthesis(benchmark::State &state)
{
    const auto plan = equal_plan(9);
    auto cfg = im3::QpskConfig::defaults_for(plan);
    cfg.num_symbols = static_cast<std::size_t>(state.range(0));
    const auto grid = cfg.grid();
    const auto basebands = im3::draw_basebands(plan, cfg);
    for (auto _ : state)
        benchmark::DoNotOptimize(im3::synthesize_qpsk(plan, basebands, cfg, grid));
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(grid.num_samples));
}
BENCHMARK(BM_QpskSynthesis)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_QpskMeasure(benchmark::State &state)
{
    const auto plan = equal_plan(9);
    auto cfg = im3::QpskConfig::defaults_for(plan);
    cfg.num_symbols = 1024;
    const auto grid = cfg.grid();
    const auto projection =
        state.range(0) == 0 ? im3::SignalProjection::AnalyticGain : im3::SignalProjection::LeastSquares;
    for (auto _ : state)
        benchmark::DoNotOptimize(im3::measure_qpsk_aci(plan, {}, cfg, grid, projection));
}
BENCHMARK(BM_QpskMeasure)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
