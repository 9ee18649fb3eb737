// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "otamp/analysis/marginal_wot.hpp"
#include "otamp/hashing/toeplitz.hpp"
#include "otamp/planner/execute.hpp"
#include "otamp/planner/param_algebra.hpp"
#include "otamp/planner/region.hpp"
#include "otamp/planner/schedules.hpp"
#include "otamp/prob/finite_dist.hpp"
#include "otamp/reductions/batch.hpp"
#include "otamp/reductions/protocols.hpp"

namespace {

using namespace otamp;
using reductions::ReductionStep;
using reductions::StepKind;

void BM_ParamAlgebraEReduce(benchmark::State& st) {
  const auto n = static_cast<unsigned>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(planner::algebra::e_reduce({0.01, 0.02, 0.2}, n));
}
BENCHMARK(BM_ParamAlgebraEReduce)->Arg(3)->Arg(33)->Arg(1001);

void BM_Plan(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(planner::plan(0.1, 0.1, 0.02, static_cast<unsigned>(st.range(0))));
}
BENCHMARK(BM_Plan)->Arg(5)->Arg(20);

void BM_RegionIterate(benchmark::State& st) {
  const auto res = static_cast<unsigned>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(planner::region_iterate(res, 8, 0.02));
}
BENCHMARK(BM_RegionIterate)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_MarginalWotZeroErrorPlan(benchmark::State& st) {
  const auto plan = planner::plan_zero_error(0.2, 0.2, 5);
  for (auto _ : st) benchmark::DoNotOptimize(planner::execute_plan(plan, primitives::event_model_sampler(0.2, 0.2, 0), {}));
}
BENCHMARK(BM_MarginalWotZeroErrorPlan)->Unit(benchmark::kMillisecond);

void BM_MarginalWotEReduce(benchmark::State& st) {
  const auto leaf = analysis::MarginalWot::from_sampler(primitives::event_model_sampler(0.1, 0.1, 0.05));
  const ReductionStep step{StepKind::EReduce, static_cast<unsigned>(st.range(0))};
  for (auto _ : st) benchmark::DoNotOptimize(analysis::MarginalWot::apply_power(step, leaf).measure());
}
BENCHMARK(BM_MarginalWotEReduce)->Arg(3)->Arg(5)->Arg(7);

void BM_BatchRReduce(benchmark::State& st) {
  const auto leaves = primitives::sample_batch(primitives::event_model_sampler(0.2, 0.2, 0.01), 1 << 12, 1);
  for (auto _ : st) benchmark::DoNotOptimize(reductions::apply_step_batch({StepKind::RReduce, 4}, leaves));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(leaves.size()));
}
BENCHMARK(BM_BatchRReduce);

void BM_ToeplitzHash(benchmark::State& st) {
  const auto n = static_cast<unsigned>(st.range(0));
  const auto h = hashing::ToeplitzHash::from_word(n, n / 2, 0x5a5a5a5a5a5aULL & ((1ULL << (n + n / 2 - 1)) - 1));
  std::uint64_t x = 1;
  for (auto _ : st) {
    benchmark::DoNotOptimize(h(x));
    x = x * 6364136223846793005ULL + 1;
    x &= (1ULL << n) - 1;
  }
}
BENCHMARK(BM_ToeplitzHash)->Arg(16)->Arg(40);

void BM_PredAdv(benchmark::State& st) {
  std::vector<std::pair<std::pair<std::uint8_t, int>, double>> cells;
  const int ny = static_cast<int>(st.range(0));
  double total = 0;
  for (int y = 0; y < ny; ++y)
    for (std::uint8_t x = 0; x < 2; ++x) {
      cells.push_back({{x, y}, 1.0 + x + y % 7});
      total += cells.back().second;
    }
  for (auto& c : cells) c.second /= total;
  const prob::JointBitDist<int> j(prob::FiniteDist<std::pair<std::uint8_t, int>>(std::move(cells), false));
  for (auto _ : st) benchmark::DoNotOptimize(prob::pred_adv(j));
}
BENCHMARK(BM_PredAdv)->Arg(16)->Arg(4096);

void BM_EnumerateSimWot(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(analysis::MarginalWot::from_sampler(primitives::simwot_sampler(0.25, 0.25)).measure());
}
BENCHMARK(BM_EnumerateSimWot);

}  // namespace

BENCHMARK_MAIN();
