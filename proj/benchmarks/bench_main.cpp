/*
   Copyright 2026 The kgcert Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

      http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <benchmark/benchmark.h>

#include "kgcert/highfreq.hpp"
#include "kgcert/lambert_w.hpp"
#include "kgcert/monodromy.hpp"
#include "kgcert/propagator.hpp"

using namespace kgcert;

namespace {

ModelSpec sin_profile() {
  return ModelSpec(PeriodicCoefficient::sin_offset(1.0, 1.0, 0.5), ConstantMass{1.0});
}

void BM_PropagatePeriod(benchmark::State& state) {
  const auto spec = sin_profile();
  const double xi = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate(spec, 0.0, spec.period(), xi).matrix);
  }
}
BENCHMARK(BM_PropagatePeriod)->Arg(1)->Arg(10)->Arg(100);

void BM_MonodromyFamily(benchmark::State& state) {
  const auto spec = sin_profile();
  const auto grid = periodic_grid(spec.period(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    MonodromyFamily family(spec, 5.0, grid);
    benchmark::DoNotOptimize(family.at(0));
  }
}
BENCHMARK(BM_MonodromyFamily)->Arg(16)->Arg(64);

void BM_CorrectorTable(benchmark::State& state) {
  const auto spec = sin_profile();
  const auto intervals = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    CorrectorTable table(spec, 50.0, 2.0 * spec.period(), intervals);
    benchmark::DoNotOptimize(table.plus(intervals));
  }
}
BENCHMARK(BM_CorrectorTable)->Arg(4096)->Arg(65536);

void BM_LambertW(benchmark::State& state) {
  double x = 1e-6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lambert_w0(x));
    x = x < 1e6 ? x * 1.1 : 1e-6;
  }
}
BENCHMARK(BM_LambertW);

} // namespace
BENCHMARK_MAIN();
