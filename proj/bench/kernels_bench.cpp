// OpenMP kernels against their serial references on Cayley balls and a
// tiling patch. Run with OMP_NUM_THREADS to vary the team size.
#include <benchmark/benchmark.h>

#include <map>

#include "stablab/group.hpp"
#include "stablab/kernels.hpp"
#include "stablab/metric.hpp"
#include "stablab/tiling.hpp"

using namespace stablab;

namespace {

const MetricGraph& f2_ball(int r) {
  static std::map<int, GroupBall> balls;
  auto it = balls.find(r);
  if (it == balls.end()) it = balls.emplace(r, cayley_ball(GroupSpec::free(2), r)).first;
  return *it->second.graph;
}

const MetricGraph& tiling_patch() {
  static TilingGraph t = [] {
    TilingOptions o;
    o.ball_radius = 7;
    return tiling_graph(4, 5, 1, o);
  }();
  return *t.graph;
}

template <bool Parallel>
void AllPairs(benchmark::State& st) {
  const MetricGraph& g = f2_ball(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    auto d = Parallel ? kernels::all_pairs(g) : kernels::all_pairs_serial(g);
    benchmark::DoNotOptimize(d.data());
  }
  st.counters["vertices"] = static_cast<double>(g.vertex_count());
}

template <bool Parallel>
void BfsRows(benchmark::State& st) {
  const MetricGraph& g = tiling_patch();
  std::vector<VertexId> src(static_cast<std::size_t>(st.range(0)));
  for (std::size_t i = 0; i < src.size(); ++i) src[i] = static_cast<VertexId>(i * 37 % g.vertex_count());
  for (auto _ : st) {
    auto rows = Parallel ? kernels::bfs_rows(g, src) : kernels::bfs_rows_serial(g, src);
    benchmark::DoNotOptimize(rows.data());
  }
  st.counters["vertices"] = static_cast<double>(g.vertex_count());
}

template <bool Parallel>
void FourPoint(benchmark::State& st) {
  const MetricGraph& g = f2_ball(6);
  const std::size_t k = static_cast<std::size_t>(st.range(0));
  std::vector<VertexId> pts(k);
  for (std::size_t i = 0; i < k; ++i) pts[i] = static_cast<VertexId>(i * 11 % g.vertex_count());
  auto rows = kernels::bfs_rows_serial(g, pts);
  kernels::SampleMatrix m{k, std::vector<int>(k * k)};
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) m.d[i * k + j] = rows[i][pts[j]];
  for (auto _ : st) {
    auto r = Parallel ? kernels::four_point_exhaustive(m) : kernels::four_point_exhaustive_serial(m);
    benchmark::DoNotOptimize(r.twice_delta);
  }
}

}  // namespace

BENCHMARK(AllPairs<false>)->Name("all_pairs/serial")->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(AllPairs<true>)->Name("all_pairs/omp")->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BfsRows<false>)->Name("bfs_rows/serial")->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BfsRows<true>)->Name("bfs_rows/omp")->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(FourPoint<false>)->Name("four_point/serial")->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(FourPoint<true>)->Name("four_point/omp")->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
