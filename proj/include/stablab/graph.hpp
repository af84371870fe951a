#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace stablab {

using VertexId = std::int32_t;
using Edge = std::pair<VertexId, VertexId>;
// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<VertexId>;

inline constexpr int kUnreachable = -1;

struct GraphMeta {
  std::string provenance;
  // Vertex the graph was grown from (identity of a Cayley ball, a vertex of
  // the central face of a tiling). -1 when the graph has no distinguished
  // center.
  VertexId basepoint = -1;
  // Radius of the ball (or number of tiling layers) the graph was built with.
  int radius = -1;
  // Estimators refuse endpoints farther than this from the basepoint, so that
  // detours are not distorted by the truncated boundary. -1 disables the check.
  int trusted_radius = -1;

  friend bool operator==(const GraphMeta&, const GraphMeta&) = default;
};

// Simple connected undirected unweighted graph with the path metric.
// Immutable once built; adjacency lists are sorted ascending, which fixes all
// tie-breaking downstream.
class MetricGraph {
 public:
  MetricGraph() = default;

  std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return adjacency_.size() / 2; }
  bool contains(VertexId v) const { return v >= 0 && static_cast<std::size_t>(v) < vertex_count(); }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool adjacent(VertexId u, VertexId v) const;

  // Edges as (u, v) with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  bool has_labels() const { return !labels_.empty(); }
  const std::string& label(VertexId v) const;
  std::optional<VertexId> find_label(std::string_view label) const;
  const std::vector<std::string>& labels() const { return labels_; }

  const GraphMeta& meta() const { return meta_; }
  // Distance from the basepoint; empty when there is no basepoint.
  const std::vector<int>& radial() const { return radial_; }
  // True when v may serve as an estimator endpoint under the trusted radius.
  bool trusted(VertexId v) const;

  friend bool operator==(const MetricGraph& a, const MetricGraph& b) {
    return a.offsets_ == b.offsets_ && a.adjacency_ == b.adjacency_ && a.labels_ == b.labels_ &&
           a.meta_ == b.meta_;
  }

 private:
  friend MetricGraph build_graph(std::size_t, std::span<const Edge>, GraphMeta, std::vector<std::string>);

  std::vector<std::size_t> offsets_;
  std::vector<VertexId> adjacency_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, VertexId> label_index_;
  GraphMeta meta_;
  std::vector<int> radial_;
};

// Throws SelfLoop, DuplicateEdge (either orientation), InvalidVertex (id out of
// range) and DisconnectedGraph. labels is either empty or one per vertex.
MetricGraph build_graph(std::size_t vertex_count, std::span<const Edge> edges, GraphMeta meta = {},
                        std::vector<std::string> labels = {});
// Vertex count inferred as max id + 1.
MetricGraph build_graph(std::span<const Edge> edges, GraphMeta meta = {});

// Plain-text form: "# vertices=N provenance=<text>", optional "# meta" and
// "# label" lines, then one "u v" line per edge in sorted order.
std::string serialize_graph(const MetricGraph& g);
MetricGraph deserialize_graph(std::string_view text);

// A vertex sequence in which consecutive vertices are adjacent.
struct PathRec {
  std::vector<VertexId> vertices;
  int endpoint_dist = 0;

  int arclength() const { return static_cast<int>(vertices.size()) - 1; }
  VertexId front() const { return vertices.front(); }
  VertexId back() const { return vertices.back(); }
  bool is_geodesic() const { return arclength() == endpoint_dist; }
};

// Validates adjacency and fills in endpoint_dist.
PathRec make_path(const MetricGraph& g, std::vector<VertexId> vertices);

}  // namespace stablab
