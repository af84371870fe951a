#include "stablab/delta.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

#include "stablab/error.hpp"
#include "stablab/kernels.hpp"
#include "stablab/metric.hpp"

namespace stablab {

namespace {

std::vector<VertexId> pick_sample(const MetricGraph& g, const DeltaOptions& opts) {
  const std::size_t n = g.vertex_count();
  std::vector<char> taken(n, 0);
  std::vector<VertexId> out;
  auto take = [&](VertexId v) {
    if (!g.contains(v)) throw Error(ErrorCode::kInvalidVertex, "delta seed " + std::to_string(v));
    if (!taken[v]) {
      taken[v] = 1;
      out.push_back(v);
    }
  };
  for (VertexId v : opts.seed_vertices) take(v);

  VertexId start = g.meta().basepoint >= 0 ? g.meta().basepoint : 0;
  std::vector<int> nearest = dist_from(g, start);
  take(start);
  for (std::size_t i = 0; i < opts.landmarks && out.size() < n; ++i) {
    VertexId far = 0;
    for (std::size_t v = 1; v < n; ++v) {
      if (nearest[v] > nearest[far]) far = static_cast<VertexId>(v);
    }
    if (nearest[far] == 0) break;
    take(far);
    std::vector<int> d = dist_from(g, far);
    for (std::size_t v = 0; v < n; ++v) nearest[v] = std::min(nearest[v], d[v]);
  }

  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
  for (std::size_t i = 0; i < opts.random_points; ++i) take(pick(rng));
  return out;
}

kernels::SampleMatrix sample_matrix(const MetricGraph& g, const std::vector<VertexId>& pts) {
  kernels::SampleMatrix m;
  m.k = pts.size();
  m.d.assign(m.k * m.k, 0);
  constexpr std::size_t kChunk = 32;
  for (std::size_t lo = 0; lo < pts.size(); lo += kChunk) {
    std::size_t hi = std::min(pts.size(), lo + kChunk);
    auto rows = kernels::bfs_rows(g, std::span<const VertexId>(pts.data() + lo, hi - lo));
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t j = 0; j < pts.size(); ++j) m.d[i * m.k + j] = rows[i - lo][pts[j]];
    }
  }
  return m;
}

class RowCache {
 public:
  explicit RowCache(const MetricGraph& g) : g_(g) {}
  const std::vector<int>& row(VertexId v) {
    auto it = rows_.find(v);
    if (it != rows_.end()) return it->second;
    if (rows_.size() > 512) rows_.clear();
    return rows_.emplace(v, dist_from(g_, v)).first->second;
  }

 private:
  const MetricGraph& g_;
  std::unordered_map<VertexId, std::vector<int>> rows_;
};

int tuple_twice_defect(RowCache& rc, const std::array<VertexId, 4>& t) {
  const auto& r0 = rc.row(t[0]);
  const auto& r1 = rc.row(t[1]);
  int d01 = r0[t[1]], d02 = r0[t[2]], d03 = r0[t[3]], d12 = r1[t[2]], d13 = r1[t[3]];
  int d23 = rc.row(t[2])[t[3]];
  return kernels::twice_defect(d01, d23, d02, d13, d03, d12);
}

}  // namespace

DeltaEstimate delta_fourpoint(const MetricGraph& g, const DeltaOptions& opts) {
  if (opts.sample_count == 0) throw Error(ErrorCode::kInvalidParameter, "sample_count must be >= 1");
  const std::size_t n = g.vertex_count();
  DeltaEstimate est;
  if (n < 4) {
    est.exhaustive = true;
    est.sample_size = n;
    return est;
  }

  if (n <= opts.exhaustive_limit) {
    std::vector<VertexId> all(n);
    for (std::size_t v = 0; v < n; ++v) all[v] = static_cast<VertexId>(v);
    auto m = sample_matrix(g, all);
    auto best = kernels::four_point_exhaustive(m);
    est.delta = best.twice_delta / 2.0;
    est.witness = {all[best.i], all[best.j], all[best.k], all[best.l]};
    est.exhaustive = true;
    est.tuples = best.tuples;
    est.sample_size = n;
    return est;
  }

  std::vector<VertexId> pts = pick_sample(g, opts);
  est.sample_size = pts.size();
  auto m = sample_matrix(g, pts);
  int best2 = 0;
  std::array<VertexId, 4> best_t{pts[0], pts[0], pts[0], pts[0]};
  if (pts.size() <= opts.exhaustive_sample_limit) {
    auto best = kernels::four_point_exhaustive(m);
    best2 = best.twice_delta;
    est.tuples = best.tuples;
    if (pts.size() >= 4) best_t = {pts[best.i], pts[best.j], pts[best.k], pts[best.l]};
  } else {
    std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
    for (std::uint64_t s = 0; s < opts.sample_count; ++s) {
      std::size_t i = pick(rng), j = pick(rng), k = pick(rng), l = pick(rng);
      int t = kernels::twice_defect(m(i, j), m(k, l), m(i, k), m(j, l), m(i, l), m(j, k));
      if (t > best2) {
        best2 = t;
        best_t = {pts[i], pts[j], pts[k], pts[l]};
      }
    }
    est.tuples = opts.sample_count;
  }

  RowCache rc(g);
  for (int round = 0; round < opts.climb_rounds && best2 > 0; ++round) {
    int round_best = best2;
    std::array<VertexId, 4> round_t = best_t;
    for (int pos = 0; pos < 4; ++pos) {
      auto nb = g.neighbors(best_t[pos]);
      std::size_t moves = std::min(nb.size(), opts.max_moves);
      for (std::size_t i = 0; i < moves; ++i) {
        std::array<VertexId, 4> cand = best_t;
        cand[pos] = nb[i * nb.size() / moves];
        int t = tuple_twice_defect(rc, cand);
        ++est.tuples;
        if (t > round_best) {
          round_best = t;
          round_t = cand;
        }
      }
    }
    if (round_best == best2) break;
    best2 = round_best;
    best_t = round_t;
  }

  est.delta = best2 / 2.0;
  est.witness = best_t;
  return est;
}

}  // namespace stablab
