#pragma once

#include <memory>
#include <vector>

#include "stablab/graph.hpp"

namespace stablab {

// 1-skeleton of the regular {p,q} tiling (p-gons, q at each vertex), grown
// from a central face; each layer adds every face around the vertices that
// the previous layer created.
struct TilingGraph {
  int p = 0, q = 0, layers = 0;
  std::shared_ptr<const MetricGraph> graph;
  std::vector<int> layer_of;                 // 0 for the central face
  std::vector<std::size_t> vertices_after;   // cumulative count after each layer
  std::vector<std::vector<VertexId>> faces;  // each counterclockwise
  std::vector<char> saturated;               // all q faces present
  // Straight edge path through vertex 0: at every vertex it leaves
  // floor(q/2) or ceil(q/2) faces on each side, alternating, and it runs
  // until it meets an unsaturated vertex.
  std::vector<VertexId> central_line;
  std::size_t center_index = 0;

  // Subpath of central_line with the given arclength, centred on vertex 0
  // (the extra vertex goes forward for odd lengths).
  PathRec central_segment(int length) const;
};

struct TilingOptions {
  // Ball mode when >= 0: instead of full coronas, each round expands only the
  // unsaturated vertices within this graph distance of vertex 0, and rounds
  // continue until that whole ball is saturated (layers is then ignored).
  int ball_radius = -1;
};

// Throws NotHyperbolicType unless (p-2)(q-2) > 4, and InvalidParameter for
// layers < 1.
TilingGraph tiling_graph(int p, int q, int layers, const TilingOptions& opts = {});

}  // namespace stablab
