#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "stablab/group.hpp"
#include "stablab/orbit.hpp"
#include "stablab/ratio.hpp"

namespace stablab {

struct Coset {
  int peripheral = 0;
  VertexId rep = 0;              // shortest member (smallest id)
  std::vector<VertexId> members;  // ascending ids
  // Representative beyond the trusted radius: the coset is only glimpsed at
  // the edge of the ball and is left out of trends.
  bool partial = false;
};

// Left cosets gP_i meeting a Cayley ball. Each P_i is generated by a subset
// of the ambient generators; coset_of[i][v] indexes cosets.
struct PeripheralStructure {
  std::vector<std::string> generators;  // symbol subsets, one per peripheral
  std::vector<std::vector<int>> gen_indices;
  std::vector<Coset> cosets;
  std::vector<std::vector<int>> coset_of;
};

// Cosets are the components of edges labelled by P_i's generators, which is
// exact when gP_i meets the ball in a P-connected set (true for the free,
// free abelian and product families). Throws PeripheralNotSubgenerated for
// symbols outside the ambient alphabet and Unsupported for small-cancellation
// balls.
PeripheralStructure peripheral_structure(const GroupBall& ball, const std::vector<std::string>& generators);

// Distance between two members of the same coset in the peripheral's own
// word metric, |nf(u^-1 v)|.
int intrinsic_distance(const GroupBall& ball, VertexId u, VertexId v);
int intrinsic_diameter(const GroupBall& ball, const std::vector<VertexId>& members);

struct ConedGraph {
  std::shared_ptr<const MetricGraph> graph;  // vertices coincide with the ball's
  std::vector<Edge> added;                   // coset clique edges not already in the ball
};

ConedGraph cone_off(const GroupBall& ball, const PeripheralStructure& ps);

struct Horoball {
  int coset = 0;
  int depth = 0;        // levels 1..depth are present
  VertexId first = 0;   // id of (members[0], level 1)
  std::size_t width = 0;
  VertexId vertex(std::size_t member, int level) const {
    return first + static_cast<VertexId>((level - 1) * width + member);
  }
};

// Ball vertices keep their ids; horoball vertices follow. Vertical edges join
// (p, n) and (p, n+1), level 0 being the ball vertex p; horizontal edges join
// (p, n) and (q, n) for n >= 1 when 0 < d_P(p, q) <= 2^n. Each horoball is
// truncated at min(n_max, ceil(log2 diam) + 1), beyond which horizontal
// edges join every pair already, so no deeper level can shorten a path.
struct CuspedGraph {
  std::shared_ptr<const MetricGraph> graph;
  std::size_t base_vertices = 0;
  int n_max = 0;
  std::vector<Horoball> horoballs;  // cosets with at least two members
  std::vector<VertexId> base_of;    // horoball vertex -> its level-0 vertex

  // The 1-Lipschitz comparison map to the coned-off graph.
  VertexId to_cone(VertexId v) const { return base_of[v]; }
};

// n_max >= 0; n_max = 0 adds no horoballs and reproduces the ball.
CuspedGraph cusp_space(const GroupBall& ball, const PeripheralStructure& ps, int n_max);

struct ProjectionSet {
  int coset = 0;
  std::vector<VertexId> vertices;  // ascending
  int diameter = 0;                // intrinsic
};

// {y in gP : d(x, y) <= d(x, gP) + 1} within the ball. Throws CosetOutsideBall
// for an unknown coset index.
ProjectionSet almost_projection(const GroupBall& ball, const PeripheralStructure& ps, int coset, VertexId x);

struct PeripheralDiamTable {
  std::vector<int> diam;  // per coset, union of almost-projections of the orbit
  int max_diam = 0;       // over cosets that are not partial
  int argmax = -1;
};

PeripheralDiamTable peripheral_diam(const GroupBall& ball, const PeripheralStructure& ps,
                                    const std::vector<VertexId>& h_orbit);

// Elements whose powers trace H-geodesics: each generator, and their product
// when there are several.
std::vector<Word> subgroup_axes(const std::vector<Word>& h_gens);
// Ball vertices of h^-r .. h^r for the largest r keeping every power within
// word length `limit`.
std::vector<VertexId> axis_images(const GroupBall& ball, const Word& h, int limit);
// Consecutive points joined by tie-broken geodesics of the target graph.
PathRec orbit_path(const MetricGraph& target, const std::vector<VertexId>& images);

struct CriterionOptions {
  Ratio t{1, 3};
  Ratio c{3};
  int n_max = 16;
  int margin = -1;  // ball margin, -1 for ceil(R/4)
  // Where Cayley balls come from; cayley_ball when empty.
  std::function<GroupBall(const GroupSpec&, int radius, const BallOptions&)> ball_source;
};

struct CriterionRow {
  int radius = 0;
  std::size_t ball_vertices = 0, cusp_vertices = 0;
  int domain_radius = 0;
  int recurrence = 0;      // max m over H-axes in G
  double kappa_cusp = 0;   // at the largest domain radius
  double kappa_cone = 0;
  int peripheral_diam = 0;
};

struct CriterionReport {
  std::string group;
  std::vector<std::string> peripherals;
  std::vector<std::string> subgroup;
  std::vector<CriterionRow> rows;
  bool stable_in_g = false;        // (1)
  bool undistorted_cusp = false;   // (2)
  bool undistorted_cone = false;   // (3), together with bounded_peripheral
  bool bounded_peripheral = false;
  bool consistent = false;
};

// Top-three stabilization rule shared by all verdicts.
bool stabilizes(const std::vector<double>& values);

// Throws MarginViolation if a radius leaves no room for the subgroup ball.
CriterionReport criterion_runner(const GroupSpec& spec, const std::vector<std::string>& peripherals,
                                 const std::vector<std::string>& subgroup, const std::vector<int>& radii,
                                 const CriterionOptions& opts = {});

struct PullbackRow {
  int radius = 0;
  int image_recurrence = 0;  // m in the cusped space, slope budget C * kappa
  Ratio image_c;
  int properness = 0;        // max |g| over ball elements with d_cusp(1, g) <= image_recurrence
  int pulled_recurrence = 0;  // m of the same H-axis measured in G
};

struct PullbackReport {
  std::vector<PullbackRow> rows;
};

PullbackReport pullback(const GroupSpec& spec, const std::vector<std::string>& peripherals,
                        const std::vector<std::string>& subgroup, const std::vector<int>& radii,
                        const CriterionOptions& opts = {});

}  // namespace stablab
