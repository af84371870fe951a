#include "stablab/metric.hpp"

#include <algorithm>
#include <limits>

#include "stablab/error.hpp"
#include "stablab/kernels.hpp"

namespace stablab {

namespace {

void check_vertex(const MetricGraph& g, VertexId v) {
  if (!g.contains(v)) throw Error(ErrorCode::kInvalidVertex, std::to_string(v));
}

std::vector<int> bfs(const MetricGraph& g, std::span<const VertexId> sources, const std::vector<char>* blocked) {
  std::vector<int> dist(g.vertex_count(), kUnreachable);
  std::vector<VertexId> queue;
  queue.reserve(g.vertex_count());
  for (VertexId s : sources) {
    check_vertex(g, s);
    if (blocked && !blocked->empty() && (*blocked)[s]) continue;
    if (dist[s] == kUnreachable) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    VertexId u = queue[head];
    for (VertexId w : g.neighbors(u)) {
      if (dist[w] != kUnreachable) continue;
      if (blocked && !blocked->empty() && (*blocked)[w]) continue;
      dist[w] = dist[u] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

}  // namespace

std::vector<int> dist_from(const MetricGraph& g, VertexId v) {
  VertexId src[1] = {v};
  return bfs(g, src, nullptr);
}

std::vector<int> dist_from_set(const MetricGraph& g, std::span<const VertexId> sources) {
  return bfs(g, sources, nullptr);
}

std::vector<int> dist_from_masked(const MetricGraph& g, VertexId v, const std::vector<char>& blocked) {
  VertexId src[1] = {v};
  return bfs(g, src, &blocked);
}

std::vector<VertexId> walk_down(const MetricGraph& g, VertexId a, const std::vector<int>& dist_to_b) {
  std::vector<VertexId> path{a};
  VertexId cur = a;
  while (dist_to_b[cur] > 0) {
    VertexId next = -1;
    for (VertexId w : g.neighbors(cur)) {
      if (dist_to_b[w] == dist_to_b[cur] - 1) {
        next = w;
        break;
      }
    }
    cur = next;
    path.push_back(cur);
  }
  return path;
}

PathRec shortest_path(const MetricGraph& g, VertexId a, VertexId b) {
  check_vertex(g, a);
  std::vector<int> db = dist_from(g, b);
  PathRec p;
  p.vertices = walk_down(g, a, db);
  p.endpoint_dist = db[a];
  return p;
}

std::optional<std::vector<VertexId>> shortest_path_masked(const MetricGraph& g, VertexId a, VertexId b,
                                                          const std::vector<char>& blocked) {
  check_vertex(g, a);
  check_vertex(g, b);
  if (!blocked.empty() && (blocked[a] || blocked[b])) return std::nullopt;
  std::vector<int> db = dist_from_masked(g, b, blocked);
  if (db[a] == kUnreachable) return std::nullopt;
  return walk_down(g, a, db);
}

double slope(const PathRec& p) {
  if (p.endpoint_dist == 0) throw Error(ErrorCode::kZeroDisplacement, "path endpoints coincide");
  return static_cast<double>(p.arclength()) / static_cast<double>(p.endpoint_dist);
}

VertexSet make_vertex_set(std::vector<VertexId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

VertexSet neighborhood(const MetricGraph& g, std::span<const VertexId> s, int r) {
  if (s.empty()) throw Error(ErrorCode::kEmptySet, "neighborhood of empty set");
  if (r < 0) throw Error(ErrorCode::kInvalidParameter, "negative radius");
  std::vector<int> d = dist_from_set(g, s);
  VertexSet out;
  for (std::size_t v = 0; v < d.size(); ++v) {
    if (d[v] != kUnreachable && d[v] <= r) out.push_back(static_cast<VertexId>(v));
  }
  return out;
}

int hausdorff(const MetricGraph& g, std::span<const VertexId> a, std::span<const VertexId> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::kEmptySet, "hausdorff of empty set");
  std::vector<int> da = dist_from_set(g, a);
  std::vector<int> db = dist_from_set(g, b);
  int h = 0;
  for (VertexId v : b) h = std::max(h, da[v]);
  for (VertexId v : a) h = std::max(h, db[v]);
  return h;
}

DistanceTable::DistanceTable(const MetricGraph& g, std::size_t full_matrix_limit) : g_(&g) {
  if (g.vertex_count() <= std::min(full_matrix_limit, kernels::kMaxMatrixVertices)) {
    full_ = true;
    matrix_ = kernels::all_pairs(g);
  }
}

int DistanceTable::operator()(VertexId u, VertexId v) const {
  if (full_) return matrix_[static_cast<std::size_t>(u) * g_->vertex_count() + v];
  auto it = rows_.find(u);
  if (it != rows_.end()) return it->second[v];
  auto jt = rows_.find(v);
  if (jt != rows_.end()) return jt->second[u];
  return row(u)[v];
}

const std::vector<int>& DistanceTable::row(VertexId u) const {
  auto it = rows_.find(u);
  if (it != rows_.end()) return it->second;
  return rows_.emplace(u, dist_from(*g_, u)).first->second;
}

void DistanceTable::prefetch(std::span<const VertexId> vs) const {
  if (full_) return;
  std::vector<VertexId> missing;
  for (VertexId v : vs) {
    if (!rows_.count(v)) missing.push_back(v);
  }
  missing = make_vertex_set(std::move(missing));
  auto rows = kernels::bfs_rows(*g_, missing);
  for (std::size_t i = 0; i < missing.size(); ++i) rows_.emplace(missing[i], std::move(rows[i]));
}

}  // namespace stablab
