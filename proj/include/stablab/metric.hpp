#pragma once

#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "stablab/graph.hpp"

namespace stablab {

// BFS distances from v; every entry is finite because graphs are connected.
std::vector<int> dist_from(const MetricGraph& g, VertexId v);
// Multi-source BFS: distance to the nearest element of sources.
std::vector<int> dist_from_set(const MetricGraph& g, std::span<const VertexId> sources);
// BFS in the subgraph induced by vertices with blocked[v] == 0. Blocked or
// unreachable vertices get kUnreachable. An empty mask blocks nothing.
std::vector<int> dist_from_masked(const MetricGraph& g, VertexId v, const std::vector<char>& blocked);

// Geodesic a -> b. Ties are broken by walking from a and always stepping to
// the smallest-id neighbour that is one closer to b.
PathRec shortest_path(const MetricGraph& g, VertexId a, VertexId b);
// Same tie-break inside the unblocked subgraph; nullopt if a or b is blocked
// or b is unreachable.
std::optional<std::vector<VertexId>> shortest_path_masked(const MetricGraph& g, VertexId a, VertexId b,
                                                          const std::vector<char>& blocked);
// Walks the tie-break rule given precomputed distances to b (kUnreachable for
// excluded vertices).
std::vector<VertexId> walk_down(const MetricGraph& g, VertexId a, const std::vector<int>& dist_to_b);

// |p| / d(a, b); throws ZeroDisplacement when the endpoints coincide.
double slope(const PathRec& p);

// Closed r-neighbourhood {v : d(v, S) <= r}; throws EmptySet on empty S.
VertexSet neighborhood(const MetricGraph& g, std::span<const VertexId> s, int r);

// Hausdorff distance between two nonempty vertex sets.
int hausdorff(const MetricGraph& g, std::span<const VertexId> a, std::span<const VertexId> b);

VertexSet make_vertex_set(std::vector<VertexId> v);

// Distance lookups backed either by a full matrix (small graphs) or by a
// cache of BFS rows filled on demand. Not thread-safe when rows are cached.
class DistanceTable {
 public:
  explicit DistanceTable(const MetricGraph& g, std::size_t full_matrix_limit = 4096);

  int operator()(VertexId u, VertexId v) const;
  const std::vector<int>& row(VertexId u) const;
  // Ensures rows for all listed vertices exist (in parallel).
  void prefetch(std::span<const VertexId> vs) const;
  const MetricGraph& graph() const { return *g_; }

 private:
  const MetricGraph* g_;
  bool full_ = false;
  std::vector<std::uint16_t> matrix_;
  mutable std::unordered_map<VertexId, std::vector<int>> rows_;
};

}  // namespace stablab
