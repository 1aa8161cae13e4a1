#include <benchmark/benchmark.h>

#include <cmath>

#include "conexp/exponents.hpp"
#include "conexp/operator_eval.hpp"
#include "conexp/quadrature.hpp"

using namespace conexp;

namespace {

const ConeSpec kHalf2{2, ConeShape::HalfSpace, {}, 0, 0};

OperatorSpec op_for(int which) {
  switch (which) {
    case 1: return {OperatorKind::PucciPlus, 1, 2, 0.5, {}};
    case 2: return {OperatorKind::PucciMinus, 1, 2, 0.5, {}};
    default: return {OperatorKind::FractionalLaplacian, 1, 1, 0.5, {}};
  }
}

void BM_RadialSymbol(benchmark::State& state) {
  const OperatorSpec op = op_for(static_cast<int>(state.range(0)));
  const QuadratureConfig q;
  for (auto _ : state) benchmark::DoNotOptimize(c_of_beta(0.7, op, 2, q));
}
BENCHMARK(BM_RadialSymbol)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_IntegrateExtremal(benchmark::State& state) {
  const OperatorSpec op = op_for(static_cast<int>(state.range(0)));
  const QuadratureConfig q;
  const auto prof = [](double th) { return std::sqrt(std::cos(th)); };
  const Vec3 x{0.3, 1, 0};
  for (auto _ : state) benchmark::DoNotOptimize(integrate_extremal(prof, 0.8, kHalf2, x, op, q).total());
}
BENCHMARK(BM_IntegrateExtremal)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ReducedSystemAssembly(benchmark::State& state) {
  const QuadratureConfig q;
  const GridSpec grid{static_cast<int>(state.range(0)), 0};
  for (auto _ : state) {
    const ReducedSystem sys({op_for(1), kHalf2, 0.8, q, grid}, 1);
    benchmark::DoNotOptimize(sys.apply(Eigen::VectorXd::Ones(sys.size())));
  }
}
BENCHMARK(BM_ReducedSystemAssembly)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_PrincipalEigenpair(benchmark::State& state) {
  const QuadratureConfig q;
  const ReducedSystem sys({op_for(1), kHalf2, 0.8, q, {24, 0}}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(principal_eigenpair(sys).mu);
}
BENCHMARK(BM_PrincipalEigenpair)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
