#include "khull/convex_hull.hpp"
#include "khull/formulas.hpp"
#include "khull/hull.hpp"
#include "khull/tessellation.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace khull;

void BM_Hull3(benchmark::State& state) {
  Rng rng(1);
  std::vector<Vector> pts;
  for (long i = 0; i < state.range(0); ++i) pts.push_back(random_direction(3, rng));
  for (auto _ : state) benchmark::DoNotOptimize(convex_hull(std::span<const Vector>(pts)).facets().size());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Hull3)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_DiskIntersection(benchmark::State& state) {
  const ConvexBody disk = ConvexBody::ball(1.0, vec2(0, 0));
  Rng rng(2);
  const PointSample sample = uniform_sample(disk, static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(disk_intersection_boundary(disk, sample).arcs.size());
}
BENCHMARK(BM_DiskIntersection)->RangeMultiplier(4)->Range(100, 25600);

void BM_ZeroCell(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const HyperplaneProcess process(ConvexBody::ball(1.0, Vector::Zero(d)));
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(zero_cell(process, rng, 4.0).cell_fvector[0]);
}
BENCHMARK(BM_ZeroCell)->Arg(2)->Arg(3);

void BM_Ef0General(benchmark::State& state) {
  const ConvexBody ellipse = ConvexBody::ellipsoid(vec2(2, 1), vec2(0, 0));
  QuadratureSpec spec;
  spec.inner_samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ef0_general(ellipse, spec).value);
}
BENCHMARK(BM_Ef0General)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
