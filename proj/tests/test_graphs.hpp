#pragma once

// Small graph builders and brute-force references shared by the unit tests.

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "stablab/graph.hpp"

namespace stablab::testing {

inline MetricGraph path_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return build_graph(n, e);
}

inline MetricGraph cycle_graph(int n, std::vector<Edge> chords = {}) {
  std::vector<Edge> e = std::move(chords);
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return build_graph(n, e);
}

// Theta graph: two hubs joined by paths with the given numbers of interior vertices.
inline MetricGraph theta_graph(std::vector<int> lengths) {
  std::vector<Edge> e;
  VertexId next = 2;
  for (int len : lengths) {
    VertexId prev = 0;
    for (int i = 0; i < len; ++i) {
      e.emplace_back(prev, next);
      prev = next++;
    }
    e.emplace_back(prev, 1);
  }
  return build_graph(next, e);
}

// Grid [0,w) x [0,h), vertex id x + w*y.
inline MetricGraph grid_graph(int w, int h) {
  std::vector<Edge> e;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (x + 1 < w) e.emplace_back(x + w * y, x + 1 + w * y);
      if (y + 1 < h) e.emplace_back(x + w * y, x + w * (y + 1));
    }
  return build_graph(w * h, e);
}

// l1 diamond |x|+|y| <= r (the Cayley ball of Z^2), ids in row-major order.
struct Diamond {
  MetricGraph g;
  int r;
  std::vector<std::pair<int, int>> coords;
  VertexId id(int x, int y) const {
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (coords[i] == std::make_pair(x, y)) return static_cast<VertexId>(i);
    return -1;
  }
};

inline Diamond diamond(int r) {
  Diamond d;
  d.r = r;
  for (int y = -r; y <= r; ++y)
    for (int x = -r; x <= r; ++x)
      if (std::abs(x) + std::abs(y) <= r) d.coords.emplace_back(x, y);
  std::vector<Edge> e;
  for (std::size_t i = 0; i < d.coords.size(); ++i)
    for (std::size_t j = i + 1; j < d.coords.size(); ++j) {
      auto [x1, y1] = d.coords[i];
      auto [x2, y2] = d.coords[j];
      if (std::abs(x1 - x2) + std::abs(y1 - y2) == 1) e.emplace_back(i, j);
    }
  d.g = build_graph(d.coords.size(), e);
  return d;
}

// Random connected graph: random spanning tree plus extra random edges.
inline MetricGraph random_graph(int n, int extra, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::set<Edge> es;
  for (int v = 1; v < n; ++v) {
    int u = std::uniform_int_distribution<int>(0, v - 1)(rng);
    es.emplace(u, v);
  }
  for (int i = 0; i < extra * 4 && static_cast<int>(es.size()) < n - 1 + extra; ++i) {
    int u = std::uniform_int_distribution<int>(0, n - 1)(rng);
    int v = std::uniform_int_distribution<int>(0, n - 1)(rng);
    if (u == v) continue;
    es.emplace(std::min(u, v), std::max(u, v));
  }
  std::vector<Edge> e(es.begin(), es.end());
  return build_graph(n, e);
}

// Floyd-Warshall on the edge list; independent of the library BFS.
inline std::vector<std::vector<int>> floyd(const MetricGraph& g) {
  const int n = static_cast<int>(g.vertex_count());
  const int inf = 1 << 28;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (auto [u, v] : g.edges()) d[u][v] = d[v][u] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

inline double delta_bruteforce(const MetricGraph& g) {
  auto d = floyd(g);
  const int n = static_cast<int>(g.vertex_count());
  int best = 0;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      for (int z = y + 1; z < n; ++z)
        for (int w = z + 1; w < n; ++w) {
          int s[3] = {d[x][y] + d[z][w], d[x][z] + d[y][w], d[x][w] + d[y][z]};
          std::sort(s, s + 3);
          best = std::max(best, s[2] - s[1]);
        }
  return best / 2.0;
}

// Middle recurrence by plain enumeration of simple a-b paths with at most
// `budget` edges; the t-middle of `p` is recomputed from Floyd distances.
inline int recurrence_bruteforce(const MetricGraph& g, const std::vector<VertexId>& p, int t_num, int t_den,
                                 int budget) {
  auto d = floyd(g);
  const int n = static_cast<int>(g.vertex_count());
  const VertexId a = p.front(), b = p.back();
  std::vector<VertexId> mid;
  for (VertexId x : p)
    if (std::min(d[x][a], d[x][b]) * t_den >= t_num * d[a][b] && d[a][b] > 0) mid.push_back(x);
  if (mid.empty()) return 0;
  std::vector<int> dm(n, 1 << 28);
  for (int v = 0; v < n; ++v)
    for (VertexId m : mid) dm[v] = std::min(dm[v], d[v][m]);
  int best = 0;
  std::vector<char> used(n, 0);
  std::vector<VertexId> stack{a};
  used[a] = 1;
  auto rec = [&](auto&& self, VertexId v, int len) -> void {
    if (v == b) {
      int m = 1 << 28;
      for (VertexId x : stack) m = std::min(m, dm[x]);
      best = std::max(best, m);
      return;
    }
    if (len + d[v][b] > budget) return;
    for (VertexId w : g.neighbors(v)) {
      if (used[w]) continue;
      used[w] = 1;
      stack.push_back(w);
      self(self, w, len + 1);
      stack.pop_back();
      used[w] = 0;
    }
  };
  rec(rec, a, 0);
  return best;
}

}  // namespace stablab::testing
