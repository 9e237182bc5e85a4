#include <benchmark/benchmark.h>

#include <vector>

#include "vws/coeffs.hpp"
#include "vws/doi.hpp"
#include "vws/evolve.hpp"
#include "vws/mollify.hpp"
#include "vws/quantize.hpp"
#include "vws/symbol.hpp"
#include "vws/vwsnet.hpp"

using namespace vws;

namespace {

CoefficientSet delta_set(int dim, int M, double L) {
  NetParams p;
  p.grid = make_grid(dim, M, L);
  return net_coefficients(preset(dim == 1 ? "delta-potential" : "ultra-diagonal", dim), p, 0.0625);
}

Field bump(const GridSpec& g) {
  return materialise(DataField::from(Profile::gaussian_bump(1.0, 1.0)), g, 0);
}

void BM_ApplySpatial(benchmark::State& state) {
  int dim = int(state.range(0));
  CoefficientSet cs = delta_set(dim, int(state.range(1)), 8.0);
  SpatialOperator op(cs);
  Field u = bump(cs.grid);
  for (auto _ : state) benchmark::DoNotOptimize(op.apply(u));
  state.SetItemsProcessed(state.iterations() * std::int64_t(cs.grid.size()));
}
BENCHMARK(BM_ApplySpatial)->Args({1, 256})->Args({1, 4096})->Args({2, 64})->Args({2, 128});

void BM_Rk4Step(benchmark::State& state) {
  int dim = int(state.range(0));
  CoefficientSet cs = delta_set(dim, int(state.range(1)), 8.0);
  EvolutionProblem prob(cs, bump(cs.grid));
  double dt = stable_step(cs);
  Field u = prob.u0;
  for (auto _ : state) benchmark::DoNotOptimize(u = step_rk4(u, 0.0, dt, prob));
}
BENCHMARK(BM_Rk4Step)->Args({1, 1024})->Args({2, 64});

void BM_Mollify(benchmark::State& state) {
  GridSpec g = make_grid(1, int(state.range(0)), 8.0);
  Field u = materialise(DataField::from(Profile::square_wave(1.0)), g, 0);
  for (auto _ : state) benchmark::DoNotOptimize(mollify(u, Mollifier::gaussian(), 0.1));
}
BENCHMARK(BM_Mollify)->Arg(1024)->Arg(16384);

void BM_DoiLadder(benchmark::State& state) {
  NetParams p;
  p.grid = make_grid(1, int(state.range(0)), 8.0);
  p.eps = {0.125, 0.0625, 0.03125, 0.015625};
  std::vector<CoefficientSet> sets;
  for (double e : p.eps) sets.push_back(net_coefficients(preset("elliptic-lipschitz", 1), p, e));
  DoiCheckParams cp;
  cp.xi = XiGrid::uniform(1, int(state.range(0)), 0.05);
  cp.workers = int(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(check_doi_ladder(sets, cp));
}
BENCHMARK(BM_DoiLadder)->Args({64, 1})->Args({64, 4})->Unit(benchmark::kMillisecond);

void BM_Quantize(benchmark::State& state) {
  CoefficientSet cs = delta_set(1, int(state.range(0)), 8.0);
  SymbolGrid a = assemble_a2(cs, XiGrid::dual(cs.grid));
  for (auto _ : state) benchmark::DoNotOptimize(quantize(a));
}
BENCHMARK(BM_Quantize)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_DenseOracle(benchmark::State& state) {
  CoefficientSet cs = delta_set(1, int(state.range(0)), 8.0);
  EvolutionProblem prob(cs, bump(cs.grid));
  prob.T = 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(dense_oracle(prob));
}
BENCHMARK(BM_DenseOracle)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
