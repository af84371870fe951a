#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "stablab/deadline.hpp"
#include "stablab/graph.hpp"
#include "stablab/ratio.hpp"

namespace stablab {

struct QgParams {
  Ratio kappa{1};
  Ratio lambda{0};

  QgParams() = default;
  // Throws InvalidParameter unless kappa >= 1 and lambda >= 0.
  QgParams(Ratio kappa, Ratio lambda);
};

// Vertices x of p with min(d(x,a), d(x,b)) >= t d(a,b), a and b the endpoints
// of p. Throws BadT unless 0 < t < 1/2.
VertexSet t_middle(const MetricGraph& g, const PathRec& p, Ratio t);

struct RecurrenceResult {
  // Smallest K such that every path from a to b of length <= floor(C d(a,b))
  // meets the closed K-neighbourhood of the t-middle.
  int m = 0;
  // A budget path avoiding the (m-1)-neighbourhood, or p itself when m = 0.
  std::vector<VertexId> witness;
  // Shortest avoiding length L(K) for K = 0..m (the last entry is the first
  // that fails: -1 for disconnection or a blocked endpoint).
  std::vector<int> lengths;
  int budget = 0;
  bool degenerate = false;  // |p| = 0 or empty t-middle
};

// Deletion search: removes N_K(middle) for K = 0, 1, ... and runs BFS until
// the shortest surviving path exceeds the budget. Throws MarginViolation if an
// endpoint of p lies outside the trusted part of g, InvalidParameter for C < 1.
RecurrenceResult recurrence_constant(const MetricGraph& g, const PathRec& p, Ratio t, Ratio c);

// Exhaustive enumeration of simple paths within the budget; graphs of at most
// 60 vertices, otherwise TooLarge.
int recurrence_oracle(const MetricGraph& g, const PathRec& p, Ratio t, Ratio c);

struct RecurrenceSample {
  Ratio c;
  RecurrenceResult result;
};

struct RecurrenceProfile {
  Ratio t;
  VertexId a = 0, b = 0;
  std::vector<RecurrenceSample> samples;  // increasing C
};

// Samples recurrence_constant over the given budgets (sorted ascending) and
// checks that m is nondecreasing in C; a violation throws OracleInconsistent.
RecurrenceProfile recurrence_profile(const MetricGraph& g, const PathRec& p, Ratio t, std::vector<Ratio> cs);

// Whether v_0 .. v_n satisfies k/kappa - lambda <= d(v_i, v_j) <= kappa k + lambda
// for all pairs, k = j - i.
bool is_discrete_quasigeodesic(const MetricGraph& g, const std::vector<VertexId>& seq, const QgParams& q);

enum class StabilityMode { kExact, kProbe };

struct StabilityOptions {
  StabilityMode mode = StabilityMode::kProbe;
  Deadline deadline;
  // Probe mode: at most this many apex vertices are tried for tent paths.
  std::size_t max_tents = 4000;
};

struct StabilityResult {
  // Largest Hausdorff distance between p and a discrete quasigeodesic with
  // the same endpoints (exact), or the best certified lower bound (probe).
  int d = 0;
  std::vector<VertexId> witness;
  StabilityMode mode = StabilityMode::kProbe;
  // False when the exact search hit its deadline; d is then a lower bound.
  bool complete = true;
  std::size_t candidates = 0;
};

// Throws NotGeodesic, MarginViolation, and TooLarge (exact mode, more than 60
// vertices).
StabilityResult stability_constant(const MetricGraph& g, const PathRec& p, const QgParams& q,
                                   const StabilityOptions& opts = {});

struct StabilitySample {
  QgParams q;
  StabilityResult result;
};

struct StabilityProfile {
  StabilityMode mode = StabilityMode::kProbe;
  std::vector<StabilitySample> samples;
};

// Parameters must be given in an order where each entry dominates the previous
// (kappa and lambda both nondecreasing); a quasigeodesic for smaller
// parameters is one for larger ones, so earlier witnesses carry forward.
StabilityProfile stability_profile(const MetricGraph& g, const PathRec& p, const std::vector<QgParams>& qs,
                                   const StabilityOptions& opts = {});

// {y in Y : d(x,y) <= d(x,Y) + eps}. Throws EmptySet on empty Y.
VertexSet projection(const MetricGraph& g, const VertexSet& y, VertexId x, int eps);

struct ContractionOptions {
  int eps = 1;
  int r_max = -1;  // -1: as far as trusted vertices reach
  // Per radius, at most this many base points x are examined (evenly spaced
  // in id order); 0 means all.
  std::size_t max_points = 0;
};

struct ContractionSample {
  int r = 0;
  int rho = 0;  // max diam(pi(x) u pi(x')) over admissible pairs
  VertexId x = -1, x2 = -1;
  std::size_t pairs = 0;
};

struct ContractionProfile {
  int eps = 1;
  std::vector<ContractionSample> samples;  // r = 1 .. r_max, radii with no x skipped
  std::vector<double> envelope;            // rho-bar, aligned with samples
  double exponent = 0.0;                   // fitted on the top half of the r-range
  bool sublinear = false;

  // Envelope as a function of r: linear interpolation of rho-bar(r)/r between
  // samples, constant beyond the last one.
  double envelope_at(double r) const;
};

// Declared thresholds for the finite-scale sublinearity verdict.
inline constexpr double kSublinearMaxExponent = 0.5;
inline constexpr double kSublinearMaxRatio = 0.5;

ContractionProfile contraction_profile(const MetricGraph& g, const VertexSet& y, const ContractionOptions& opts = {});

struct ContractPiece {
  std::size_t begin = 0, end = 0;  // indices into h
  int r = 0;                       // d(x_i, gamma)
  int length = 0;                  // d(x_i, x_{i+1})
};

struct ContractLemmaReport {
  int k = 0;
  std::vector<ContractPiece> pieces;
  bool property1 = false;  // |h_i| = r_i for i < m
  bool property2 = false;  // h_i inside the r_i-ball about x_i
  double rho_k = 0.0;
  double lhs = 0.0;  // rho(K)/K
  double rhs = 0.0;  // (1 - (2K + rho(K))/|h|) / sl(h)
  bool holds = false;
};

// Greedy maximal-ball decomposition of h and the resulting inequality. Throws
// HypothesisViolated if h comes closer than K to gamma or an endpoint is not
// at distance exactly K; InvalidParameter for K < 1.
ContractLemmaReport verify_contract_lemma(const MetricGraph& g, const VertexSet& gamma, const PathRec& h, int k,
                                          const std::function<double(int)>& rho);

struct Property5Result {
  // Smallest K with gamma|[a,b] inside N_K(p) for every path p from a to b of
  // length <= floor(C d(a,b)).
  int k = 0;
  VertexId worst = -1;              // vertex of gamma realising K
  std::vector<VertexId> witness;    // budget path at distance K from worst
  std::vector<int> per_vertex;      // along gamma
  int budget = 0;
};

Property5Result property5_constant(const MetricGraph& g, const PathRec& p, Ratio c);

}  // namespace stablab
