#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "anisolab/coefficients.hpp"
#include "anisolab/fd_operators.hpp"
#include "anisolab/limit_solver.hpp"
#include "anisolab/linear_solver.hpp"
#include "anisolab/norms.hpp"
#include "anisolab/spectral.hpp"

using namespace anisolab;

namespace {

Grid square(Index n) {
  const std::vector<double> ext{1.0, 1.0};
  const std::vector<Index> cells{n, n};
  return make_grid(ext, cells, 1);
}

ScalarField sinsin(const Grid& g) {
  using std::numbers::pi;
  return sample(g, [](std::span<const double> x) { return std::sin(pi * x[0]) * std::sin(pi * x[1]); });
}

void BM_Assemble(benchmark::State& state) {
  const Grid g = square(state.range(0));
  const auto a = scale_coefficients(sample_coefficients(g, smooth_family(2)), 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_operator(a));
  state.SetItemsProcessed(state.iterations() * g.interior_count());
}
BENCHMARK(BM_Assemble)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_DirectSolve(benchmark::State& state) {
  const Grid g = square(state.range(0));
  const auto op = assemble_operator(scale_coefficients(sample_coefficients(g, smooth_family(2)), 0.1));
  const auto f = sinsin(g);
  for (auto _ : state) benchmark::DoNotOptimize(solve_dirichlet(op, f));
}
BENCHMARK(BM_DirectSolve)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_CgSolve(benchmark::State& state) {
  const Grid g = square(128);
  const double eps = std::ldexp(1.0, -static_cast<int>(state.range(0)));
  const auto op = assemble_operator(scale_coefficients(sample_coefficients(g, smooth_family(2)), eps));
  const auto f = sinsin(g);
  SolveInfo info;
  for (auto _ : state) {
    auto r = solve_dirichlet(op, f, {SolverKind::cg, 1e-10, 0});
    info = r.info;
    benchmark::DoNotOptimize(r);
  }
  state.counters["cg_iterations"] = static_cast<double>(info.iterations);
}
BENCHMARK(BM_CgSolve)->DenseRange(0, 6, 2)->Unit(benchmark::kMillisecond);

void BM_LimitSolve(benchmark::State& state) {
  const Grid g = square(state.range(0));
  const auto a = sample_coefficients(g, smooth_family(2));
  const auto f = sinsin(g);
  for (auto _ : state) benchmark::DoNotOptimize(solve_limit(a, f));
}
BENCHMARK(BM_LimitSolve)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_LaplacianBoundCheck(benchmark::State& state) {
  const Index n = state.range(0);
  const auto f = random_zero_mean_forcing({n, n}, 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(laplacian_ratios(f, 0.01));
}
BENCHMARK(BM_LaplacianBoundCheck)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_FrechetDistance(benchmark::State& state) {
  const Grid g = square(state.range(0));
  const auto u = sinsin(g);
  const ScalarField v = 0.5 * u;
  const auto fam = nested_family(g, 20);
  for (auto _ : state) benchmark::DoNotOptimize(frechet_distance(u, v, fam));
}
BENCHMARK(BM_FrechetDistance)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
