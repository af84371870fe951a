#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "stablab/graph.hpp"

// Data-parallel kernels. Each OpenMP version has a serial twin with identical
// output; tests compare them and bench/ times them.
namespace stablab::kernels {

inline constexpr std::size_t kMaxMatrixVertices = 20000;
inline constexpr std::uint16_t kFarAway = 0xFFFF;

// Row-major n x n distance matrix. Throws TooLarge above kMaxMatrixVertices.
std::vector<std::uint16_t> all_pairs(const MetricGraph& g);
std::vector<std::uint16_t> all_pairs_serial(const MetricGraph& g);

// One BFS row per source, in source order.
std::vector<std::vector<int>> bfs_rows(const MetricGraph& g, std::span<const VertexId> sources);
std::vector<std::vector<int>> bfs_rows_serial(const MetricGraph& g, std::span<const VertexId> sources);

// Distances among a vertex sample, as a dense k x k matrix (row-major).
struct SampleMatrix {
  std::size_t k = 0;
  std::vector<int> d;
  int operator()(std::size_t i, std::size_t j) const { return d[i * k + j]; }
};

// Largest four-point defect over all 4-subsets of the sample; returns twice
// the defect (an integer) and the indices of a maximising tuple.
struct FourPointMax {
  int twice_delta = 0;
  std::size_t i = 0, j = 0, k = 0, l = 0;
  std::uint64_t tuples = 0;
};
FourPointMax four_point_exhaustive(const SampleMatrix& m);
FourPointMax four_point_exhaustive_serial(const SampleMatrix& m);

// Twice the four-point defect of one tuple.
inline int twice_defect(int dxy, int dzw, int dxz, int dyw, int dxw, int dyz) {
  int s1 = dxy + dzw, s2 = dxz + dyw, s3 = dxw + dyz;
  int hi = std::max({s1, s2, s3});
  int lo = std::min({s1, s2, s3});
  int mid = s1 + s2 + s3 - hi - lo;
  return hi - mid;
}

}  // namespace stablab::kernels
