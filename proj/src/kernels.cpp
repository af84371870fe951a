#include "stablab/kernels.hpp"

#include <algorithm>

#include "stablab/error.hpp"
#include "stablab/metric.hpp"

namespace stablab::kernels {

namespace {

void bfs_into(const MetricGraph& g, VertexId src, std::vector<int>& dist, std::vector<VertexId>& queue) {
  std::fill(dist.begin(), dist.end(), kUnreachable);
  queue.clear();
  dist[src] = 0;
  queue.push_back(src);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    VertexId u = queue[head];
    int du = dist[u] + 1;
    for (VertexId w : g.neighbors(u)) {
      if (dist[w] == kUnreachable) {
        dist[w] = du;
        queue.push_back(w);
      }
    }
  }
}

void check_size(const MetricGraph& g) {
  if (g.vertex_count() > kMaxMatrixVertices) {
    throw Error(ErrorCode::kTooLarge, "distance matrix limited to " + std::to_string(kMaxMatrixVertices) +
                                          " vertices, graph has " + std::to_string(g.vertex_count()));
  }
}

void store_row(std::vector<std::uint16_t>& out, std::size_t n, std::size_t s, const std::vector<int>& dist) {
  for (std::size_t v = 0; v < n; ++v) {
    out[s * n + v] = dist[v] < 0 ? kFarAway : static_cast<std::uint16_t>(dist[v]);
  }
}

// Best tuple with first index fixed at i; shared by both four-point kernels.
FourPointMax four_point_from(const SampleMatrix& m, std::size_t i) {
  FourPointMax best;
  best.i = i;
  const std::size_t k = m.k;
  for (std::size_t j = i + 1; j < k; ++j) {
    for (std::size_t a = j + 1; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) {
        int t = twice_defect(m(i, j), m(a, b), m(i, a), m(j, b), m(i, b), m(j, a));
        ++best.tuples;
        if (t > best.twice_delta) {
          best.twice_delta = t;
          best.j = j;
          best.k = a;
          best.l = b;
        }
      }
    }
  }
  return best;
}

void merge(FourPointMax& into, const FourPointMax& part) {
  into.tuples += part.tuples;
  if (part.twice_delta > into.twice_delta) {
    std::uint64_t tuples = into.tuples;
    into = part;
    into.tuples = tuples;
  }
}

}  // namespace

std::vector<std::uint16_t> all_pairs(const MetricGraph& g) {
  check_size(g);
  const std::size_t n = g.vertex_count();
  std::vector<std::uint16_t> out(n * n);
#pragma omp parallel
  {
    std::vector<int> dist(n);
    std::vector<VertexId> queue;
    queue.reserve(n);
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(n); ++s) {
      bfs_into(g, static_cast<VertexId>(s), dist, queue);
      store_row(out, n, static_cast<std::size_t>(s), dist);
    }
  }
  return out;
}

std::vector<std::uint16_t> all_pairs_serial(const MetricGraph& g) {
  check_size(g);
  const std::size_t n = g.vertex_count();
  std::vector<std::uint16_t> out(n * n);
  std::vector<int> dist(n);
  std::vector<VertexId> queue;
  for (std::size_t s = 0; s < n; ++s) {
    bfs_into(g, static_cast<VertexId>(s), dist, queue);
    store_row(out, n, s, dist);
  }
  return out;
}

std::vector<std::vector<int>> bfs_rows(const MetricGraph& g, std::span<const VertexId> sources) {
  std::vector<std::vector<int>> rows(sources.size());
#pragma omp parallel
  {
    std::vector<VertexId> queue;
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(sources.size()); ++i) {
      rows[i].resize(g.vertex_count());
      bfs_into(g, sources[i], rows[i], queue);
    }
  }
  return rows;
}

std::vector<std::vector<int>> bfs_rows_serial(const MetricGraph& g, std::span<const VertexId> sources) {
  std::vector<std::vector<int>> rows(sources.size());
  std::vector<VertexId> queue;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    rows[i].resize(g.vertex_count());
    bfs_into(g, sources[i], rows[i], queue);
  }
  return rows;
}

FourPointMax four_point_exhaustive(const SampleMatrix& m) {
  FourPointMax best;
  std::vector<FourPointMax> parts(m.k);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(m.k); ++i) {
    parts[i] = four_point_from(m, static_cast<std::size_t>(i));
  }
  // Merge in index order so ties resolve exactly as in the serial loop.
  for (const auto& p : parts) merge(best, p);
  return best;
}

FourPointMax four_point_exhaustive_serial(const SampleMatrix& m) {
  FourPointMax best;
  for (std::size_t i = 0; i < m.k; ++i) merge(best, four_point_from(m, i));
  return best;
}

}  // namespace stablab::kernels
