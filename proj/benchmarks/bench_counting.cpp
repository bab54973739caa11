#include <benchmark/benchmark.h>

#include "ffembed/count.hpp"
#include "ffembed/refine.hpp"
#include "ffembed/rng.hpp"

using namespace ffembed;

namespace {

PointSet plane(std::uint64_t q) { return PointSet::full_space(Space(Field::make(q), 2)); }

void BM_ChainBacktracking(benchmark::State& state) {
  auto f = Field::make(11);
  Scalar t = f->one();
  PointSet E = plane(11);
  unsigned m = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_all(chain(m, t), E).total);
  }
}
BENCHMARK(BM_ChainBacktracking)->Arg(2)->Arg(3);

void BM_ChainPropagation(benchmark::State& state) {
  auto f = Field::make(11);
  Scalar t = f->one();
  PointSet E = plane(11);
  unsigned m = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(chain_homomorphism_count(m, t, E));
  }
}
BENCHMARK(BM_ChainPropagation)->Arg(2)->Arg(3)->Arg(6);

void BM_SimplexChainDP(benchmark::State& state) {
  auto f = Field::make(7);
  Scalar t = f->one();
  PointSet E = plane(7);
  unsigned k = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(simplex_chain_count(k, 2, t, E).total);
  }
}
BENCHMARK(BM_SimplexChainDP)->Arg(1)->Arg(2)->Arg(4);

void BM_SphereEnumeration(benchmark::State& state) {
  auto f = Field::make(101);
  for (auto _ : state) {
    // distinct radii defeat the cache
    static std::uint64_t r = 0;
    r = r % 100 + 1;
    benchmark::DoNotOptimize(sphere(f, 2, f->element(r)).size());
  }
}
BENCHMARK(BM_SphereEnumeration);

void BM_DegreePass(benchmark::State& state) {
  auto f = Field::make(101);
  Scalar t = f->one();
  PointSet E = plane(101);
  for (auto _ : state) {
    benchmark::DoNotOptimize(all_edge_degrees(E, t));
  }
}
BENCHMARK(BM_DegreePass);

void BM_ShaveOneEdge(benchmark::State& state) {
  auto f = Field::make(101);
  Scalar t = f->one();
  PointSet E = plane(101);
  for (auto _ : state) {
    benchmark::DoNotOptimize(shave_one_edge(E, t, Rational(8), Rational(101)).subset.size());
  }
}
BENCHMARK(BM_ShaveOneEdge);

}  // namespace

BENCHMARK_MAIN();
