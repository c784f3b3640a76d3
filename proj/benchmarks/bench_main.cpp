// Copyright 2026 The distdyk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include <benchmark/benchmark.h>

#include "distdyk/engine.hpp"
#include "distdyk/oracle.hpp"

namespace distdyk {
namespace {

Vec gaussian(int m, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec v(m);
  for (int k = 0; k < m; ++k) v(k) = n(rng);
  return v;
}

ConvexSet make_set(int family, int m, std::mt19937_64& rng) {
  switch (family) {
    case 0:
      return ConvexSet::halfspace(gaussian(m, rng), 1.0);
    case 1:
      return ConvexSet::ball(gaussian(m, rng), 1.5);
    case 2:
      return ConvexSet::box(Vec::Constant(m, -1.0), Vec::Constant(m, 1.0));
    default: {
      Mat rows(4, m);
      for (int r = 0; r < 4; ++r) rows.row(r) = gaussian(m, rng).transpose();
      return ConvexSet::polyhedron(rows, Vec::Ones(4));
    }
  }
}

void BM_Project(benchmark::State& state) {
  const int family = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  std::mt19937_64 rng(1);
  const ConvexSet c = make_set(family, m, rng);
  std::vector<Vec> points;
  for (int k = 0; k < 64; ++k) points.push_back(3.0 * gaussian(m, rng));
  size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(project(c, points[k++ % points.size()]));
  }
  state.SetLabel(std::string(c.kind_name()));
}
BENCHMARK(BM_Project)->ArgsProduct({{0, 1, 2, 3}, {2, 5, 20}});

void BM_EngineCycle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = generate(InstanceKind::kMixed, 5, cycle_graph(n), 3);
  const Schedule sched = make_schedule(inst.graph, SchedulePolicy::kCyclicVFirst, 1);
  DualState s = init_state(inst);
  for (auto _ : state) {
    for (const Block& b : sched.cycles[0]) benchmark::DoNotOptimize(run_block(s, inst, b));
  }
  state.SetItemsProcessed(state.iterations() * (n + inst.graph.num_edges()));
}
BENCHMARK(BM_EngineCycle)->Arg(8)->Arg(32)->Arg(128);

void BM_RunToCertificate(benchmark::State& state) {
  const Instance inst = generate(InstanceKind::kBalls, 3, path_graph(8), 5);
  const Schedule sched = make_schedule(inst.graph, SchedulePolicy::kCyclicVFirst, 1);
  for (auto _ : state) benchmark::DoNotOptimize(run(inst, sched));
}
BENCHMARK(BM_RunToCertificate)->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& state) {
  const Instance inst = generate(InstanceKind::kMixed, 3, path_graph(8), 5);
  for (auto _ : state) benchmark::DoNotOptimize(centralized_dykstra(inst.sets, inst.anchor));
}
BENCHMARK(BM_Oracle)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace distdyk

BENCHMARK_MAIN();
