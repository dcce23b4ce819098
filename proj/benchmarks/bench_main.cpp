// Copyright 2026 The twolevel Authors
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

#include <benchmark/benchmark.h>

#include "twolevel/adiabatic.hpp"
#include "twolevel/oracle.hpp"
#include "twolevel/scenarios.hpp"

namespace {

using namespace twolevel;

void BM_SineScenario(benchmark::State& state) {
  const ScenarioSpec spec = ScenarioSpec::from_nu0T(static_cast<double>(state.range(0)), 4096);
  for (auto _ : state) {
    SineScenario s = sine_scenario(spec);
    benchmark::DoNotOptimize(s.probability.data());
  }
}
BENCHMARK(BM_SineScenario)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_OracleIntegrate(benchmark::State& state) {
  const ScenarioSpec spec = ScenarioSpec::from_nu0T(static_cast<double>(state.range(0)), 4096);
  const SineScenario s = sine_scenario(spec);
  const IntegratorConfig cfg = sine_oracle_config(spec);
  std::size_t steps = 0;
  for (auto _ : state) {
    OracleResult r = integrate(s.system.hamiltonian, s.grid(), cfg);
    steps = r.rk4_steps;
    benchmark::DoNotOptimize(r.trajectory.data());
  }
  state.counters["rk4_steps"] = static_cast<double>(steps);
}
BENCHMARK(BM_OracleIntegrate)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_AdiabaticEstimates(benchmark::State& state) {
  const SineScenario s = sine_scenario(ScenarioSpec::from_nu0T(100.0, 4096));
  for (auto _ : state) {
    auto est = adiabatic_estimates(s);
    benchmark::DoNotOptimize(est.data());
  }
}
BENCHMARK(BM_AdiabaticEstimates)->Unit(benchmark::kMillisecond);

void BM_NoTransitionSynthesis(benchmark::State& state) {
  const NoTransitionSpec spec = rotating_no_transition_family(0.785398, 0.2, 40.0);
  const auto grid = quad::uniform_grid(0.0, no_transition_horizon(1.0), 400);
  for (auto _ : state) {
    NoTransitionSynthesis syn = synthesize_no_transition(spec, grid);
    benchmark::DoNotOptimize(syn.zeta.data());
  }
}
BENCHMARK(BM_NoTransitionSynthesis)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
