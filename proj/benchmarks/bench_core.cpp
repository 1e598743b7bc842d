// Copyright 2026 The coxkl Authors.
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

#include "coxkl/coxeter.hpp"
#include "coxkl/invariance.hpp"
#include "coxkl/klpoly.hpp"
#include "coxkl/matchings.hpp"
#include "coxkl/poset.hpp"

using namespace coxkl;

namespace {

const char* const kGroups[] = {"A3", "B3", "A4", "F4"};

Element longest_up_to(const CoxeterSystem& sys, int length) {
  Element best = sys.identity();
  for (Element w : sys.elements()) {
    if (w.length() <= length && w.length() > best.length()) best = w;
  }
  return best;
}

void BM_GroupConstruction(benchmark::State& state) {
  const char* name = kGroups[state.range(0)];
  for (auto _ : state) benchmark::DoNotOptimize(CoxeterSystem::named(name).size());
  state.SetLabel(name);
}
BENCHMARK(BM_GroupConstruction)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_LowerInterval(benchmark::State& state) {
  const auto sys = CoxeterSystem::named("F4");
  const Element w = longest_up_to(sys, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Interval::lower(sys, w).size());
}
BENCHMARK(BM_LowerInterval)->Arg(6)->Arg(9)->Arg(12)->Unit(benchmark::kMicrosecond);

void BM_SpecialMatchings(benchmark::State& state) {
  const auto sys = CoxeterSystem::named("F4");
  const Interval iv = Interval::lower(sys, longest_up_to(sys, static_cast<int>(state.range(0))));
  std::size_t count = 0;
  for (auto _ : state) {
    count = enumerate_special_matchings(iv).size();
    benchmark::DoNotOptimize(count);
  }
  state.counters["matchings"] = static_cast<double>(count);
}
BENCHMARK(BM_SpecialMatchings)->Arg(5)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_PColumn(benchmark::State& state) {
  const auto sys = CoxeterSystem::named("F4");
  const Element v = longest_up_to(sys, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    PTable table(sys, {}, XParam::kQ);
    benchmark::DoNotOptimize(table.column(v).size());
  }
}
BENCHMARK(BM_PColumn)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  const auto sys = CoxeterSystem::named("B3");
  SweepOptions options;
  options.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sweep_calculating(sys, options).h_special);
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
