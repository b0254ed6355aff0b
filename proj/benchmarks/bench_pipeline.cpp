/*
 * Copyright (C) 2026 The GraphReg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "graphreg/graph.hpp"
#include "graphreg/pipeline.hpp"
#include "graphreg/rng.hpp"
#include "graphreg/synth.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

using namespace graphreg;

// bumpy sphere: curved, asymmetric, well-posed for registration
PointCloud make_surface(int n, std::uint64_t seed) {
    Rng rng(seed);
    PointCloud cloud;
    cloud.positions.reserve(n);
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector3d dir = rng.next_unit_vector();
        const double radius = 1.0 + 0.18 * std::sin(3.0 * dir.x() + 1.1) +
                              0.12 * std::sin(5.0 * dir.y()) + 0.09 * std::sin(4.0 * dir.z());
        cloud.positions.push_back(radius * dir);
    }
    return cloud;
}

void BM_BuildGraph(benchmark::State& state) {
    const PointCloud cloud = make_surface(static_cast<int>(state.range(0)), 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_graph(cloud, 10));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildGraph)->Range(1 << 10, 1 << 15)->Complexity();

void BM_ResponseIntensity(benchmark::State& state) {
    const PointCloud cloud = make_surface(static_cast<int>(state.range(0)), 7);
    const NeighborGraph graph = build_graph(cloud, 10);
    for (auto _ : state) {
        benchmark::DoNotOptimize(response_intensity(cloud, graph));
    }
}
BENCHMARK(BM_ResponseIntensity)->Range(1 << 10, 1 << 15);

void BM_Preprocess(benchmark::State& state) {
    const PointCloud cloud = make_surface(static_cast<int>(state.range(0)), 7);
    const RegistrationConfig config;
    for (auto _ : state) {
        benchmark::DoNotOptimize(preprocess(cloud, config));
    }
}
BENCHMARK(BM_Preprocess)->Range(1 << 11, 1 << 14);

void BM_Register(benchmark::State& state) {
    const PointCloud cloud = make_surface(static_cast<int>(state.range(0)), 7);
    PerturbationSpec spec;
    spec.angle_max_deg = 20.0;
    const SynthPair pair = synthesize_pair(cloud, spec, 11);
    const RegistrationConfig config;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run(pair.source, pair.target, config, pair.ground_truth));
    }
}
BENCHMARK(BM_Register)->Range(1 << 11, 1 << 13)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
