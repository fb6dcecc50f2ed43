#include "fractsob/energy.hpp"
#include "fractsob/geometry.hpp"
#include "fractsob/operators.hpp"
#include "fractsob/spectral.hpp"

#include <benchmark/benchmark.h>

using namespace fractsob;

namespace {

void bm_build_level(benchmark::State& state) {
  const IfsSpec spec = make_sg();
  const int level = int(state.range(0));
  for (auto _ : state) {
    LevelGraph g = build_level(spec, level);
    benchmark::DoNotOptimize(g.vertex_count());
  }
}
BENCHMARK(bm_build_level)->Arg(3)->Arg(5)->Arg(6);

void bm_build_vicsek(benchmark::State& state) {
  const IfsSpec spec = make_vicsek(1, 2);
  const int level = int(state.range(0));
  for (auto _ : state) {
    LevelGraph g = build_level(spec, level);
    benchmark::DoNotOptimize(g.vertex_count());
  }
}
BENCHMARK(bm_build_vicsek)->Arg(3)->Arg(4);

void bm_harmonic_extension(benchmark::State& state) {
  const IfsSpec spec = make_sg();
  LevelStack stack(spec);
  HarmonicExtender ext(stack);
  const int level = int(state.range(0));
  const std::vector<Rational> a = {Rational(1), Rational(0), Rational(0)};
  for (auto _ : state) {
    RationalFunction u = ext.harmonic(a, level);
    benchmark::DoNotOptimize(u.values.size());
  }
}
BENCHMARK(bm_harmonic_extension)->Arg(4)->Arg(6);

void bm_assemble(benchmark::State& state) {
  const IfsSpec spec = make_sg();
  const LevelGraph g = build_level(spec, int(state.range(0)));
  for (auto _ : state) {
    OperatorAssembly op = assemble(spec, g, BC::dirichlet);
    benchmark::DoNotOptimize(op.size());
  }
}
BENCHMARK(bm_assemble)->Arg(4)->Arg(6);

void bm_eigensolve(benchmark::State& state) {
  const IfsSpec spec = make_sg();
  const LevelGraph g = build_level(spec, int(state.range(0)));
  const OperatorAssembly op = assemble(spec, g, BC::dirichlet);
  for (auto _ : state) {
    EigenSystem es = eigensolve(op, {});
    benchmark::DoNotOptimize(es.count());
  }
}
BENCHMARK(bm_eigensolve)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void bm_apply_spectral(benchmark::State& state) {
  const IfsSpec spec = make_sg();
  const LevelGraph g = build_level(spec, 5);
  const EigenSystem es = eigensolve(assemble(spec, g, BC::dirichlet), {});
  const Eigen::VectorXd f = Eigen::VectorXd::Ones(es.mass.size());
  const SpectralFn fn = fn_power(-0.8);
  for (auto _ : state) {
    Eigen::VectorXd u = apply_spectral(es, fn, f);
    benchmark::DoNotOptimize(u.sum());
  }
}
BENCHMARK(bm_apply_spectral);

void bm_kernel_column(benchmark::State& state) {
  const IfsSpec spec = make_sg();
  const LevelGraph g = build_level(spec, 5);
  const EigenSystem es = eigensolve(assemble(spec, g, BC::dirichlet), {});
  const SpectralFn fn = fn_heat(0.01);
  for (auto _ : state) {
    Eigen::VectorXd col = kernel_column(es, fn, 17);
    benchmark::DoNotOptimize(col.sum());
  }
}
BENCHMARK(bm_kernel_column);

void bm_resistance_matrix(benchmark::State& state) {
  const IfsSpec spec = make_sg();
  LevelStack stack(spec);
  const int level = int(state.range(0));
  stack.graph(level);
  for (auto _ : state) {
    Eigen::MatrixXd R = resistance_matrix(stack, level);
    benchmark::DoNotOptimize(R.sum());
  }
}
BENCHMARK(bm_resistance_matrix)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
