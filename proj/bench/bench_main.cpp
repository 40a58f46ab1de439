// Copyright 2026 The sprint-swap Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <vector>

#include "sprint/ion_catalog.hpp"
#include "sprint/oracle.hpp"
#include "sprint/sampling.hpp"

using namespace sprint;

namespace {

struct SampleFixture {
  Preset p = preset("Ca40", CavityFlavor::conventional);
  QubitSamples samples;
  std::vector<double> f, eta;

  explicit SampleFixture(std::size_t n)
      : samples(QubitSamples::generate({SamplerMode::haar, n, 1})), f(n), eta(n) {}
};

void BM_EvaluateSamples(benchmark::State& state) {
  SampleFixture fx(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    kernels::evaluate_samples(fx.samples.states(), fx.p.system, fx.p.cavity, {}, fx.f, fx.eta);
    benchmark::DoNotOptimize(fx.f.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EvaluateSamplesSerial(benchmark::State& state) {
  SampleFixture fx(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    kernels::evaluate_samples_serial(fx.samples.states(), fx.p.system, fx.p.cavity, {}, fx.f, fx.eta);
    benchmark::DoNotOptimize(fx.f.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_OracleSuite(benchmark::State& state) {
  const auto cases = random_oracle_cases(16, 3);
  OracleSuiteOptions opt;
  opt.seed_ratio = 50.0;
  for (auto _ : state) benchmark::DoNotOptimize(run_oracle_suite(cases, opt));
}

void BM_OracleSuiteSerial(benchmark::State& state) {
  const auto cases = random_oracle_cases(16, 3);
  OracleSuiteOptions opt;
  opt.seed_ratio = 50.0;
  for (auto _ : state) benchmark::DoNotOptimize(run_oracle_suite_serial(cases, opt));
}

}  // namespace

BENCHMARK(BM_EvaluateSamples)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 17);
BENCHMARK(BM_EvaluateSamplesSerial)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 17);
BENCHMARK(BM_OracleSuite)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleSuiteSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
