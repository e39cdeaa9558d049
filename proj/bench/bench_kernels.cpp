/* Copyright 2026 The redax Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

// Serial vs OpenMP kernels, and the scalar reference simulator vs the 64-lane word engine,
// on random netlists of growing size.

#include "support.hpp"

#include "redax/graph_algo.hpp"
#include "redax/kernels.hpp"
#include "redax/sim.hpp"

#include <benchmark/benchmark.h>

#include <map>

using namespace redax;

namespace {

const Hypergraph& netlist(int gates) {
    static std::map<int, Hypergraph> cache;
    auto it = cache.find(gates);
    if (it == cache.end()) it = cache.emplace(gates, test::random_netlist(42, 32, gates, gates / 50)).first;
    return it->second;
}

void cone_sizes(benchmark::State& st, kernels::Exec exec) {
    const Hypergraph& g = netlist(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::cone_sizes(g, exec));
    st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * g.size()));
}

void cone_sizes_reference(benchmark::State& st) {
    const Hypergraph& g = netlist(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::cone_sizes_reference(g));
    st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * g.size()));
}

void cut_features(benchmark::State& st, kernels::Exec exec) {
    const Hypergraph& g = netlist(static_cast<int>(st.range(0)));
    const auto cps = identify_cut_points(g);
    for (auto _ : st) benchmark::DoNotOptimize(kernels::cut_features(g, cps, exec));
    st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * cps.size()));
}

/// 64 random stimulus vectors per cycle, 16 cycles.
constexpr int kCycles = 16;

void sim_reference(benchmark::State& st) {
    const Hypergraph& g = netlist(static_cast<int>(st.range(0)));
    std::vector<std::vector<bool>> stim(64 * kCycles, std::vector<bool>(g.pis().size()));
    for (std::size_t k = 0; k < stim.size(); ++k)
        for (std::size_t i = 0; i < stim[k].size(); ++i) stim[k][i] = (stimulus_word(1, 0, k, i) & 1u) != 0;
    // 64 independent single-lane runs of kCycles cycles each.
    for (auto _ : st) {
        for (int lane = 0; lane < 64; ++lane) {
            std::vector<std::vector<bool>> seq(stim.begin() + lane * kCycles, stim.begin() + (lane + 1) * kCycles);
            benchmark::DoNotOptimize(reference::run(g, seq));
        }
    }
    st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * 64 * kCycles));
}

void sim_word(benchmark::State& st) {
    const Hypergraph& g = netlist(static_cast<int>(st.range(0)));
    const Simulator sim(g);
    std::vector<std::uint64_t> in(sim.inputs().size()), state(sim.registers().size()), values(sim.vertex_count());
    for (auto _ : st) {
        std::fill(state.begin(), state.end(), 0);
        for (int c = 0; c < kCycles; ++c) {
            for (std::size_t i = 0; i < in.size(); ++i) in[i] = stimulus_word(1, 0, static_cast<std::uint64_t>(c), i);
            sim.step(in, state, values);
        }
        benchmark::DoNotOptimize(values.data());
    }
    st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * 64 * kCycles));
}

} // namespace

BENCHMARK_CAPTURE(cone_sizes, serial, kernels::Exec::Serial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(cone_sizes, parallel, kernels::Exec::Parallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(cone_sizes_reference)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(cut_features, serial, kernels::Exec::Serial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(cut_features, parallel, kernels::Exec::Parallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(sim_reference)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(sim_word)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
