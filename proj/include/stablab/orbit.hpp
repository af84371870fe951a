#pragma once

#include <memory>
#include <vector>

#include "stablab/graph.hpp"
#include "stablab/group.hpp"

namespace stablab {

// Orbit map of a finitely generated subgroup H (given by words) acting on a
// basepoint: the ball of radius domain_radius in H's own word metric, sent to
// vertices of a target graph whose first vertices are the ambient ball (as
// for the ball itself, its coned-off or its cusped graph).
struct OrbitMap {
  std::vector<Word> h_gens;
  int domain_radius = 0;
  std::shared_ptr<const MetricGraph> domain;  // Cayley ball of H, BFS order
  std::vector<int> domain_length;             // H word length per domain vertex
  std::vector<VertexId> image;                // domain vertex -> target vertex
  std::shared_ptr<const MetricGraph> target;
};

struct OrbitOptions {
  // Images must have ambient word length <= ball radius - margin; -1 uses
  // the ball's own margin.
  int margin = -1;
};

// Throws ImageEscapesBall when an orbit point leaves the trusted part of the
// ambient ball, and InvalidParameter for empty or trivial generators.
OrbitMap orbit_map(const GroupBall& ball, std::shared_ptr<const MetricGraph> target, std::vector<Word> h_gens,
                   int domain_radius, const OrbitOptions& opts = {});

// Largest domain radius whose orbit stays inside the trusted part of the ball.
int max_domain_radius(const GroupBall& ball, const std::vector<Word>& h_gens, int margin = -1);

struct DistortionSample {
  int r = 0;
  // Smallest kappa with d_X <= kappa d_H and d_H <= kappa d_X over all pairs
  // in the radius-r ball of H; lambda is then the residual additive error
  // (nonzero only for non-injective orbit maps).
  double kappa = 1.0;
  double lambda = 0.0;
};

struct DistortionProfile {
  std::vector<DistortionSample> samples;  // r = 1 .. domain_radius
  // Undistorted iff kappa varies by less than 5% over the three largest radii.
  bool undistorted = false;
  double growth_exponent = 0.0;  // log-log slope of kappa(r)
};

DistortionProfile distortion_profile(const OrbitMap& m);

// Relative spread (max - min) / max of the last three values; 0 for all-zero.
double top3_variation(const std::vector<double>& values);

}  // namespace stablab
