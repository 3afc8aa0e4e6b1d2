// SPDX-License-Identifier: Apache-2.0
//
// leoris: link-level simulation of RIS-assisted LEO satellite downlinks
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

#include "leoris/beamforming.hpp"
#include "leoris/channel.hpp"
#include "leoris/doppler_ofdm.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace leoris;

namespace {

CascadedChannel random_channel(std::size_t m, std::size_t n, std::uint64_t seed)
{
    RandomStream rng(seed);
    CascadedChannel ch{CVector(static_cast<Eigen::Index>(m)), CMatrix(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m)),
                       CVector(static_cast<Eigen::Index>(n))};
    for (Eigen::Index i = 0; i < ch.h_direct.size(); ++i) ch.h_direct[i] = sample_rayleigh(1.0, rng);
    for (Eigen::Index i = 0; i < ch.h_sat_ris.size(); ++i) ch.h_sat_ris.data()[i] = sample_rayleigh(1.0, rng);
    for (Eigen::Index i = 0; i < ch.h_ris_user.size(); ++i) ch.h_ris_user[i] = sample_rayleigh(1.0, rng);
    return ch;
}

LinkBudget budget()
{
    LinkBudget b;
    b.bandwidth_hz = 1e6;
    return b;
}

void BM_AoContinuous(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto ch = random_channel(16, n, 1);
    const auto panel = RisPanel::passive(n);
    for (auto _ : state) benchmark::DoNotOptimize(ao_optimize(ch, panel, budget()));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AoContinuous)->RangeMultiplier(2)->Range(100, 800)->Complexity();

void BM_AoDiscrete(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto ch = random_channel(16, n, 2);
    const auto panel = RisPanel::passive(n, 3);
    for (auto _ : state) benchmark::DoNotOptimize(ao_optimize(ch, panel, budget()));
}
BENCHMARK(BM_AoDiscrete)->RangeMultiplier(2)->Range(100, 800);

void BM_AoSingleAntenna(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto ch = random_channel(1, n, 3);
    const auto panel = RisPanel::passive(n);
    for (auto _ : state) benchmark::DoNotOptimize(ao_optimize(ch, panel, budget()));
}
BENCHMARK(BM_AoSingleAntenna)->Arg(8)->Arg(64);

void BM_TxRisMrt(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto ch = random_channel(16, n, 4);
    const auto panel = RisPanel::passive(n);
    for (auto _ : state) benchmark::DoNotOptimize(tx_ris_mrt(ch, panel, budget()));
}
BENCHMARK(BM_TxRisMrt)->Arg(100)->Arg(800);

void BM_ShadowedRician(benchmark::State& state)
{
    const ShadowedRicianParams p{0.063, 0.739, 8.97e-4};
    RandomStream rng(5);
    for (auto _ : state) benchmark::DoNotOptimize(sample_shadowed_rician(p, rng));
}
BENCHMARK(BM_ShadowedRician);

void BM_Rayleigh(benchmark::State& state)
{
    RandomStream rng(6);
    for (auto _ : state) benchmark::DoNotOptimize(sample_rayleigh(1.0, rng));
}
BENCHMARK(BM_Rayleigh);

void BM_IciSinr(benchmark::State& state)
{
    double snr = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ici_sinr(snr, 0.0696));
        snr += 1e-9;
    }
}
BENCHMARK(BM_IciSinr);

}  // namespace

BENCHMARK_MAIN();
