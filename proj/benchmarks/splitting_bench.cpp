#include <benchmark/benchmark.h>

#include <random>

#include "ibcsplit/experiment.hpp"

using namespace ibc;

namespace {

PreparedExperiment& prepared_1d() {
  static PreparedExperiment prep = prepare_experiment(spec_from_preset("ex5_1"));
  return prep;
}

PreparedExperiment& prepared_2d() {
  static PreparedExperiment prep = prepare_experiment(spec_from_preset("ex6_2"));
  return prep;
}

}  // namespace

static void BM_assemble_1d(benchmark::State& state) {
  const FaceBC d = FaceBC::dirichlet_bc(1.0);
  const Grid1D grid = build_grid_1d(0.0, 1.0, state.range(0), d, d);
  for (auto _ : state) {
    auto op = assemble_operator_1d(grid, EllipticCoefficients1D::laplacian(), d, d);
    benchmark::DoNotOptimize(op);
  }
}
BENCHMARK(BM_assemble_1d)->Arg(499);

static void BM_plan_spectral_1d(benchmark::State& state) {
  const FaceBC d = FaceBC::dirichlet_bc(0.0);
  const Grid1D grid = build_grid_1d(0.0, 1.0, state.range(0), d, d);
  const auto op = assemble_operator_1d(grid, EllipticCoefficients1D::laplacian(), d, d);
  for (auto _ : state) {
    auto plan = plan_spectral(op);
    benchmark::DoNotOptimize(plan);
  }
}
BENCHMARK(BM_plan_spectral_1d)->Arg(127)->Arg(499);

static void BM_affine_flow_1d(benchmark::State& state) {
  const PreparedExperiment& prep = prepared_1d();
  for (auto _ : state) {
    auto v = affine_flow(prep.plan, 0.01, prep.u0, prep.op.r());
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_affine_flow_1d);

static void BM_classic_step_1d(benchmark::State& state) {
  const PreparedExperiment& prep = prepared_1d();
  for (auto _ : state) {
    auto u = classic_strang_step(prep.op, prep.plan, prep.reaction, prep.u0, 0.0, 0.01);
    benchmark::DoNotOptimize(u);
  }
}
BENCHMARK(BM_classic_step_1d);

static void BM_ibc_step_1d(benchmark::State& state) {
  const PreparedExperiment& prep = prepared_1d();
  for (auto _ : state) {
    auto u = ibc_strang_step(prep.op, prep.plan, prep.reaction, prep.u0, 0.0, 0.01);
    benchmark::DoNotOptimize(u);
  }
}
BENCHMARK(BM_ibc_step_1d);

static void BM_ibc_step_2d(benchmark::State& state) {
  const PreparedExperiment& prep = prepared_2d();
  for (auto _ : state) {
    auto u = ibc_strang_step(prep.op, prep.plan, prep.reaction, prep.u0, 0.0, 0.005);
    benchmark::DoNotOptimize(u);
  }
}
BENCHMARK(BM_ibc_step_2d);

static void BM_reference_rhs_2d(benchmark::State& state) {
  const PreparedExperiment& prep = prepared_2d();
  Eigen::VectorXd out(prep.op.dim());
  for (auto _ : state) {
    prep.op.apply(prep.u0, out);
    out += prep.op.r() + prep.reaction.eval(0.0, prep.u0);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_reference_rhs_2d);

BENCHMARK_MAIN();
