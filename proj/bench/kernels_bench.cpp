// Serial reference kernels against their OpenMP counterparts.
// Run with --benchmark_filter=Mask etc.; outputs are equal by construction
// and the first iteration of each pair checks it.

#include <benchmark/benchmark.h>

#include "ncreeb/domain.hpp"
#include "ncreeb/grid_oracle.hpp"
#include "ncreeb/planarity.hpp"
#include "ncreeb/reeb.hpp"
#include "ncreeb/theorems.hpp"

using namespace ncreeb;

namespace {

NCDomain plane() {
  BandSpec s;
  s.bands = {{Rational(-1), Rational(1), 3}};
  return build_band_domain(s);
}

NCDomain solid() {
  const auto d = plane();
  return lift_product(d, d);
}

const NCDomain& domain_for(int dim) {
  static const NCDomain d2 = plane(), d3 = solid();
  return dim == 2 ? d2 : d3;
}

void BM_Mask(benchmark::State& st) {
  const auto& d = domain_for(static_cast<int>(st.range(0)));
  const auto box = default_box(d);
  const bool parallel = st.range(2) != 0;
  for (auto _ : st) benchmark::DoNotOptimize(grid_mask(d, box, st.range(1), GridOptions{}.eps_scale, parallel));
  st.SetLabel(parallel ? "openmp" : "serial");
}

void BM_Labels(benchmark::State& st) {
  const auto& d = domain_for(static_cast<int>(st.range(0)));
  const auto mask = grid_mask(d, default_box(d), st.range(1), GridOptions{}.eps_scale, true);
  const bool parallel = st.range(2) != 0;
  if (label_slabs_serial(mask) != label_slabs_parallel(mask)) st.SkipWithError("kernels disagree");
  for (auto _ : st) benchmark::DoNotOptimize(parallel ? label_slabs_parallel(mask) : label_slabs_serial(mask));
  st.SetLabel(parallel ? "openmp" : "serial");
}

void BM_Oracle(benchmark::State& st) {
  const auto& d = domain_for(static_cast<int>(st.range(0)));
  GridOptions o;
  o.resolution = st.range(1);
  o.parallel = st.range(2) != 0;
  for (auto _ : st) benchmark::DoNotOptimize(reeb_grid_oracle(d, o));
  st.SetLabel(o.parallel ? "openmp" : "serial");
}

void BM_LevelPlanarityOracle(benchmark::State& st) {
  // five sheets between a split and a merge, crossed with a two-sheet theta
  LeveledGraph a, b;
  for (long l : {0, 2, 4, 6}) a.add_vertex(Rational(l));
  a.add_edge(0, 1);
  for (int i = 0; i < 5; ++i) a.add_edge(1, 2);
  a.add_edge(2, 3);
  for (long l : {-1, 1, 5, 7}) b.add_vertex(Rational(l));
  b.add_edge(0, 1);
  b.add_edge(1, 2);
  b.add_edge(1, 2);
  b.add_edge(2, 3);
  const auto g = fiber_product(a, b).graph;
  const bool parallel = st.range(0) != 0;
  for (auto _ : st) benchmark::DoNotOptimize(level_planarity_oracle(g, parallel));
  st.SetLabel(parallel ? "openmp" : "serial");
}

}  // namespace

BENCHMARK(BM_Mask)->ArgsProduct({{2}, {400, 1600}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Mask)->ArgsProduct({{3}, {64, 128}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Labels)->ArgsProduct({{2}, {400, 1600}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Labels)->ArgsProduct({{3}, {64, 128}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Oracle)->ArgsProduct({{2}, {400}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Oracle)->ArgsProduct({{3}, {96}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LevelPlanarityOracle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
