#include <benchmark/benchmark.h>

#include "ikg/harness.hpp"
#include "ikg/policies.hpp"
#include "ikg/posterior.hpp"
#include "ikg/presets.hpp"
#include "ikg/rates.hpp"
#include "ikg/variant_policies.hpp"

namespace {

ikg::PosteriorState warm_state(const ikg::ProblemInstance& inst,
                               std::uint64_t seed, int pulls_per_arm) {
  ikg::GaussianRng rng(seed);
  ikg::PosteriorState s = ikg::PosteriorState::from_instance(inst);
  std::vector<double> sample(inst.num_measures());
  for (int r = 0; r < pulls_per_arm; ++r) {
    for (int i = 0; i < inst.num_arms(); ++i) {
      ikg::draw_sample(inst, i, rng, sample);
      s.update(i, sample);
    }
  }
  return s;
}

void BM_IkgSelect(benchmark::State& state) {
  ikg::ProblemInstance inst = ikg::preset("example1", ikg::GoalKind::best_arm);
  ikg::PosteriorState s = warm_state(inst, 1, 20);
  ikg::GaussianRng rng(2);
  ikg::PolicyChoice policy{ikg::PolicyKind::ikg};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ikg::select_arm(policy, s, 0, rng));
  }
}
BENCHMARK(BM_IkgSelect);

void BM_KgSelect(benchmark::State& state) {
  ikg::ProblemInstance inst = ikg::preset("example1", ikg::GoalKind::best_arm);
  ikg::PosteriorState s = warm_state(inst, 1, 20);
  ikg::GaussianRng rng(2);
  ikg::PolicyChoice policy{ikg::PolicyKind::kg};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ikg::select_arm(policy, s, 0, rng));
  }
}
BENCHMARK(BM_KgSelect);

void BM_FeasibilitySelect(benchmark::State& state) {
  ikg::ProblemInstance inst =
      ikg::preset("example1", ikg::GoalKind::feasibility);
  ikg::PosteriorState s = warm_state(inst, 1, 20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ikg::select_arm_variant(
        ikg::PolicyKind::ikg_feasibility, s, inst.goal, 0));
  }
}
BENCHMARK(BM_FeasibilitySelect);

void BM_Replication(benchmark::State& state) {
  ikg::ProblemInstance inst = ikg::preset("example1", ikg::GoalKind::best_arm);
  ikg::PolicyChoice policy{ikg::PolicyKind::ikg};
  std::vector<long> budgets = {static_cast<long>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ikg::run_replication(inst, policy, budgets, 2, 42));
  }
}
BENCHMARK(BM_Replication)->Arg(1000)->Arg(5000);

void BM_OptimalAllocation(benchmark::State& state) {
  ikg::ProblemInstance inst = ikg::preset("example1", ikg::GoalKind::best_arm);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ikg::solve_optimal_allocation(inst));
  }
}
BENCHMARK(BM_OptimalAllocation);

}  // namespace

BENCHMARK_MAIN();
