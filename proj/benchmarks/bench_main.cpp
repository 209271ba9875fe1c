#include <benchmark/benchmark.h>

#include <random>

#include "dustsqp/hs_registry.hpp"
#include "dustsqp/sqp.hpp"
#include "support/test_support.hpp"

namespace {

using namespace dustsqp;

void BM_DualSweepDense(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  std::mt19937_64 rng(1);
  const SubproblemData sd = testing::random_subproblem(n, m, m / 3, rng);
  const HessianModel h = HessianModel::dense(testing::random_spd(n, rng),
                                             testing::random_spd(n, rng), 1.0);
  DualIterate warm;
  warm.zeta = Vector::Zero(m);
  DualQpSolver qp(sd, h, warm);
  for (auto _ : state) {
    qp.sweep();
    benchmark::DoNotOptimize(qp.penalty_dual());
  }
  state.SetItemsProcessed(state.iterations() * 2 * m);
}
BENCHMARK(BM_DualSweepDense)->Args({20, 10})->Args({100, 60})->Args({300, 200});

void BM_DualSweepLowRank(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  std::mt19937_64 rng(2);
  const SubproblemData sd = testing::random_subproblem(n, m, m / 3, rng);
  const HessianModel h = testing::random_low_rank(n, 5, 5, rng, 1.0);
  DualIterate warm;
  warm.zeta = Vector::Zero(m);
  DualQpSolver qp(sd, h, warm);
  for (auto _ : state) {
    qp.sweep();
    benchmark::DoNotOptimize(qp.penalty_dual());
  }
  state.SetItemsProcessed(state.iterations() * 2 * m);
}
BENCHMARK(BM_DualSweepLowRank)->Args({100, 60})->Args({500, 300})->Args({2000, 1000});

void BM_InverseApplyLowRank(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  const HessianModel h = testing::random_low_rank(n, 5, 5, rng, 1.0);
  const Vector z = testing::random_vector(n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(h.inverse_apply(z));
  }
}
BENCHMARK(BM_InverseApplyLowRank)->Arg(100)->Arg(1000)->Arg(10000);

void BM_RescaleRho(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(4);
  const HessianModel h = testing::random_low_rank(n, 5, 5, rng, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(h.rescale_rho(0.9));
  }
}
BENCHMARK(BM_RescaleRho)->Arg(100)->Arg(1000);

void BM_SolveHs(benchmark::State& state, const char* name) {
  const NlpProblem p = get_problem(name);
  const SolverConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sqp_solve(p, cfg).f_final);
  }
}
BENCHMARK_CAPTURE(BM_SolveHs, hs43, "hs43")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SolveHs, hs100, "hs100")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SolveHs, hs61_inf, "hs61_inf")->Unit(benchmark::kMillisecond);

void BM_SolveSynthLbfgs(benchmark::State& state) {
  const NlpProblem p = get_problem("synth500");
  SolverConfig cfg;
  cfg.hessian = HessianMode::Lbfgs;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sqp_solve(p, cfg).f_final);
  }
}
BENCHMARK(BM_SolveSynthLbfgs)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace

BENCHMARK_MAIN();
