#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "stablab/graph.hpp"

namespace stablab {

struct DeltaOptions {
  // Graphs with at most this many vertices are scanned over every 4-subset.
  std::size_t exhaustive_limit = 160;
  // Sampled mode: farthest-point landmarks grown from the basepoint, plus
  // uniformly random vertices, plus any caller-supplied seeds.
  std::size_t landmarks = 40;
  std::size_t random_points = 40;
  std::vector<VertexId> seed_vertices;
  // Sample sets up to this size get every 4-subset checked; larger ones get
  // sample_count random 4-subsets instead.
  std::size_t exhaustive_sample_limit = 220;
  std::uint64_t sample_count = 4'000'000;
  // Local search from the best sampled tuple: each round tries moving one
  // point to (at most max_moves of) its neighbours.
  int climb_rounds = 12;
  std::size_t max_moves = 10;
  std::uint64_t seed = 1;
};

struct DeltaEstimate {
  // Four-point defect: half the gap between the two largest pair sums.
  double delta = 0.0;
  std::array<VertexId, 4> witness{0, 0, 0, 0};
  bool exhaustive = false;
  std::uint64_t tuples = 0;
  std::size_t sample_size = 0;
};

// Four-point hyperbolicity of g. Exact when exhaustive is set; otherwise a
// lower bound that is monotone in the candidate pool.
DeltaEstimate delta_fourpoint(const MetricGraph& g, const DeltaOptions& opts = {});

}  // namespace stablab
