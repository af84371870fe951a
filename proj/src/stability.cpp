#include "stablab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "stablab/error.hpp"
#include "stablab/kernels.hpp"
#include "stablab/metric.hpp"

namespace stablab {

namespace {

constexpr std::size_t kOracleMaxVertices = 60;

void check_endpoints(const MetricGraph& g, const PathRec& p) {
  for (VertexId v : {p.front(), p.back()}) {
    if (!g.trusted(v)) {
      throw Error(ErrorCode::kMarginViolation,
                  "endpoint " + std::to_string(v) + " lies outside trusted radius " +
                      std::to_string(g.meta().trusted_radius));
    }
  }
}

int budget_of(Ratio c, int d) {
  if (c < Ratio(1)) throw Error(ErrorCode::kInvalidParameter, "slope budget C must be >= 1, got " + c.str());
  return static_cast<int>(c.floor_times(d));
}

std::vector<char> mask_within(const std::vector<int>& dist, int k) {
  std::vector<char> m(dist.size());
  for (std::size_t i = 0; i < dist.size(); ++i) m[i] = dist[i] <= k;
  return m;
}

// Shortest a-b length avoiding the mask (-1 if blocked or disconnected),
// with the tie-broken path when one exists.
int avoiding_length(const MetricGraph& g, VertexId a, VertexId b, const std::vector<char>& blocked,
                    std::vector<VertexId>* path) {
  if (blocked[a] || blocked[b]) return -1;
  std::vector<int> to_b = dist_from_masked(g, b, blocked);
  if (to_b[a] == kUnreachable) return -1;
  if (path) *path = walk_down(g, a, to_b);
  return to_b[a];
}

}  // namespace

QgParams::QgParams(Ratio k, Ratio l) : kappa(k), lambda(l) {
  if (kappa < Ratio(1) || lambda < Ratio(0)) {
    throw Error(ErrorCode::kInvalidParameter, "need kappa >= 1 and lambda >= 0, got (" + kappa.str() + ", " +
                                                  lambda.str() + ")");
  }
}

// ---------------------------------------------------------------- t-middle

VertexSet t_middle(const MetricGraph& g, const PathRec& p, Ratio t) {
  if (!(Ratio(0) < t && t < Ratio(1, 2))) throw Error(ErrorCode::kBadT, "t must lie in (0, 1/2), got " + t.str());
  if (p.vertices.empty()) return {};
  std::vector<int> da = dist_from(g, p.front()), db = dist_from(g, p.back());
  const int d = da[p.back()];
  // min(d(x,a), d(x,b)) >= t d  <=>  min * den >= num * d
  std::vector<VertexId> out;
  for (VertexId x : p.vertices) {
    std::int64_t m = std::min(da[x], db[x]);
    if (d > 0 && m * t.den() >= t.num() * d) out.push_back(x);
  }
  return make_vertex_set(std::move(out));
}

// ---------------------------------------------------------------- recurrence

RecurrenceResult recurrence_constant(const MetricGraph& g, const PathRec& p, Ratio t, Ratio c) {
  check_endpoints(g, p);
  RecurrenceResult res;
  res.budget = budget_of(c, p.endpoint_dist);
  VertexSet middle = t_middle(g, p, t);
  if (p.arclength() == 0 || middle.empty()) {
    res.degenerate = true;
    res.witness = p.vertices;
    return res;
  }
  std::vector<int> dm = dist_from_set(g, middle);
  std::vector<VertexId> last;
  for (int k = 0;; ++k) {
    std::vector<VertexId> path;
    int len = avoiding_length(g, p.front(), p.back(), mask_within(dm, k), &path);
    if (len >= 0 && !res.lengths.empty() && len < res.lengths.back()) {
      throw Error(ErrorCode::kOracleInconsistent, "avoiding length decreased as the neighbourhood grew");
    }
    res.lengths.push_back(len);
    if (len < 0 || len > res.budget) {
      res.m = k;
      break;
    }
    last = std::move(path);
  }
  res.witness = res.m == 0 ? p.vertices : last;
  return res;
}

int recurrence_oracle(const MetricGraph& g, const PathRec& p, Ratio t, Ratio c) {
  const std::size_t n = g.vertex_count();
  if (n > kOracleMaxVertices) {
    throw Error(ErrorCode::kTooLarge, "recurrence oracle needs <= 60 vertices, got " + std::to_string(n));
  }
  const int budget = budget_of(c, p.endpoint_dist);
  VertexSet middle = t_middle(g, p, t);
  if (p.arclength() == 0 || middle.empty()) return 0;
  std::vector<int> dm = dist_from_set(g, middle);
  const VertexId a = p.front(), b = p.back();
  std::vector<int> to_b = dist_from(g, b);

  // Best over simple a-b paths of length <= budget of min dm along the path.
  int best = -1;
  std::vector<char> on_path(n, 0);
  auto dfs = [&](auto&& self, VertexId v, int len, int cur) -> void {
    if (cur <= best) return;
    if (v == b) {
      best = cur;
      return;
    }
    for (VertexId w : g.neighbors(v)) {
      if (on_path[w] || len + 1 + to_b[w] > budget) continue;
      on_path[w] = 1;
      self(self, w, len + 1, std::min(cur, dm[w]));
      on_path[w] = 0;
    }
  };
  on_path[a] = 1;
  dfs(dfs, a, 0, dm[a]);
  return std::max(best, 0);
}

RecurrenceProfile recurrence_profile(const MetricGraph& g, const PathRec& p, Ratio t, std::vector<Ratio> cs) {
  std::sort(cs.begin(), cs.end());
  RecurrenceProfile prof;
  prof.t = t;
  prof.a = p.front();
  prof.b = p.back();
  for (Ratio c : cs) {
    RecurrenceResult r = recurrence_constant(g, p, t, c);
    if (!prof.samples.empty() && r.m < prof.samples.back().result.m) {
      throw Error(ErrorCode::kOracleInconsistent, "recurrence constant decreased in C");
    }
    prof.samples.push_back({c, std::move(r)});
  }
  return prof;
}

// ---------------------------------------------------------------- stability

namespace {

// Integer forms of the pairwise window: for index gap k the distance must lie
// in [lo[k], hi[k]].
struct QgWindow {
  std::vector<long long> lo, hi;
  int nmax = 0;

  QgWindow(const QgParams& q, int d) {
    nmax = static_cast<int>((q.kappa * (Ratio(d) + q.lambda)).floor_times(1));
    for (int k = 0; k <= nmax + 1; ++k) {
      lo.push_back((Ratio(k) / q.kappa - q.lambda).ceil_times(1));
      hi.push_back((q.kappa * Ratio(k) + q.lambda).floor_times(1));
    }
  }
  bool ok(int k, int dist) const { return lo[k] <= dist && dist <= hi[k]; }
  // Fewest index steps able to cover the distance.
  int steps(int dist) const {
    for (int s = 0; s <= nmax; ++s)
      if (hi[s] >= dist) return s;
    return nmax + 1;
  }
};

// Distances with a bounded row cache, so probe runs on large graphs do not
// accumulate a row per visited vertex.
class RowCache {
 public:
  explicit RowCache(const MetricGraph& g) : g_(g), full_(g.vertex_count() <= 4096) {
    if (full_) table_.emplace(g);
  }
  int operator()(VertexId u, VertexId v) {
    if (full_) return (*table_)(u, v);
    auto it = rows_.find(u);
    if (it == rows_.end()) {
      auto jt = rows_.find(v);
      if (jt != rows_.end()) return jt->second[u];
      if (rows_.size() >= 256) rows_.clear();
      it = rows_.emplace(u, dist_from(g_, u)).first;
    }
    return it->second[v];
  }

 private:
  const MetricGraph& g_;
  bool full_;
  std::optional<DistanceTable> table_;
  std::unordered_map<VertexId, std::vector<int>> rows_;
};

bool certify(RowCache& dist, const std::vector<VertexId>& seq, const QgWindow& w) {
  const int n = static_cast<int>(seq.size()) - 1;
  if (n > w.nmax) return false;
  // endpoints first, they fail most often
  if (!w.ok(n, dist(seq.front(), seq.back()))) return false;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (!w.ok(j - i, dist(seq[i], seq[j]))) return false;
  return true;
}

struct Hausdorff {
  const std::vector<int>& to_p;                 // d(., p)
  const std::vector<std::vector<int>>& p_rows;  // rows of p's vertices

  int operator()(const std::vector<VertexId>& seq) const {
    int out = 0;
    for (VertexId v : seq) out = std::max(out, to_p[v]);
    for (const auto& row : p_rows) {
      int m = std::numeric_limits<int>::max();
      for (VertexId v : seq) m = std::min(m, row[v]);
      out = std::max(out, m);
    }
    return out;
  }
  int to_p_max(const std::vector<VertexId>& seq) const {
    int out = 0;
    for (VertexId v : seq) out = std::max(out, to_p[v]);
    return out;
  }
};

// Depth-first search for a discrete quasigeodesic from a to b within the
// allowed vertices, optionally required to visit a target.
class QgSearch {
 public:
  QgSearch(const MetricGraph& g, const DistanceTable& dt, const QgWindow& w, VertexId a, VertexId b,
           const Deadline& deadline)
      : g_(g), dt_(dt), w_(w), a_(a), b_(b), deadline_(deadline) {}

  bool timed_out() const { return timed_out_; }

  std::optional<std::vector<VertexId>> find(const std::vector<char>& allowed, VertexId target) {
    allowed_ = &allowed;
    target_ = target;
    if (!allowed[a_] || !allowed[b_]) return std::nullopt;
    seq_.assign(1, a_);
    const bool visited = target_ < 0 || a_ == target_;
    if (!feasible_future(visited)) return std::nullopt;
    if (dfs(visited)) return seq_;
    return std::nullopt;
  }

 private:
  bool feasible_future(bool visited) const {
    const int j = static_cast<int>(seq_.size()) - 1;
    VertexId x = seq_.back();
    int need = visited ? w_.steps(dt_(x, b_)) : w_.steps(dt_(x, target_)) + w_.steps(dt_(target_, b_));
    int n_min = j + need;
    if (n_min > w_.nmax) return false;
    // lo is increasing in the gap, so the earliest possible end is the
    // weakest lower-bound requirement against b.
    for (int i = 0; i <= j; ++i)
      if (dt_(seq_[i], b_) < w_.lo[n_min - i]) return false;
    return true;
  }

  bool dfs(bool visited) {
    if ((++nodes_ & 0xfff) == 0 && deadline_.expired()) timed_out_ = true;
    if (timed_out_) return false;
    if (seq_.back() == b_ && visited && seq_.size() > 1) return true;
    const int j = static_cast<int>(seq_.size());
    if (j > w_.nmax) return false;
    VertexId goal = visited ? b_ : target_;
    std::vector<VertexId> cand;
    for (VertexId x = 0; x < static_cast<VertexId>(g_.vertex_count()); ++x) {
      if (!(*allowed_)[x]) continue;
      bool good = true;
      for (int i = j - 1; i >= 0 && good; --i) good = w_.ok(j - i, dt_(seq_[i], x));
      if (good) cand.push_back(x);
    }
    std::stable_sort(cand.begin(), cand.end(), [&](VertexId x, VertexId y) { return dt_(x, goal) < dt_(y, goal); });
    for (VertexId x : cand) {
      seq_.push_back(x);
      bool now = visited || x == target_;
      if (feasible_future(now) && dfs(now)) return true;
      seq_.pop_back();
      if (timed_out_) return false;
    }
    return false;
  }

  const MetricGraph& g_;
  const DistanceTable& dt_;
  const QgWindow& w_;
  VertexId a_, b_;
  const Deadline& deadline_;
  const std::vector<char>* allowed_ = nullptr;
  VertexId target_ = -1;
  std::vector<VertexId> seq_;
  std::size_t nodes_ = 0;
  bool timed_out_ = false;
};

void check_geodesic(const PathRec& p) {
  if (!p.is_geodesic()) {
    throw Error(ErrorCode::kNotGeodesic, "reference path has length " + std::to_string(p.arclength()) +
                                             " but its endpoints are " + std::to_string(p.endpoint_dist) + " apart");
  }
}

}  // namespace

bool is_discrete_quasigeodesic(const MetricGraph& g, const std::vector<VertexId>& seq, const QgParams& q) {
  if (seq.empty()) return false;
  const int n = static_cast<int>(seq.size()) - 1;
  for (int i = 0; i < n; ++i) {
    std::vector<int> row = dist_from(g, seq[i]);
    for (int j = i + 1; j <= n; ++j) {
      long long k = j - i, d = row[seq[j]];
      // k/kappa - lambda <= d <= kappa k + lambda
      if ((Ratio(k) / q.kappa - q.lambda) > Ratio(d)) return false;
      if (Ratio(d) > q.kappa * Ratio(k) + q.lambda) return false;
    }
  }
  return true;
}

StabilityResult stability_constant(const MetricGraph& g, const PathRec& p, const QgParams& q,
                                   const StabilityOptions& opts) {
  check_geodesic(p);
  check_endpoints(g, p);
  const std::size_t n = g.vertex_count();
  if (opts.mode == StabilityMode::kExact && n > kOracleMaxVertices) {
    throw Error(ErrorCode::kTooLarge, "exact stability search needs <= 60 vertices, got " + std::to_string(n));
  }
  const VertexId a = p.front(), b = p.back();
  const QgWindow w(q, p.endpoint_dist);
  std::vector<int> to_p = dist_from_set(g, p.vertices);
  std::vector<std::vector<int>> p_rows = kernels::bfs_rows(g, p.vertices);
  Hausdorff haus{to_p, p_rows};

  StabilityResult res;
  res.mode = opts.mode;
  res.witness = p.vertices;
  res.d = 0;
  res.candidates = 1;
  auto consider = [&](const std::vector<VertexId>& seq) {
    int h = haus(seq);
    if (h > res.d) {
      res.d = h;
      res.witness = seq;
    }
  };
  const std::vector<int>& from_a = p_rows.front();
  const std::vector<int>& from_b = p_rows.back();

  // Apex vertices by decreasing distance from p, ties by id.
  std::vector<VertexId> apex;
  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
    if (to_p[v] > 0 && w.steps(from_a[v]) + w.steps(from_b[v]) <= w.nmax) apex.push_back(v);
  }
  std::stable_sort(apex.begin(), apex.end(), [&](VertexId x, VertexId y) { return to_p[x] > to_p[y]; });

  if (opts.mode == StabilityMode::kExact) {
    DistanceTable dt(g);
    QgSearch search(g, dt, w, a, b, opts.deadline);
    std::vector<char> all(n, 1);
    for (VertexId v : apex) {
      if (to_p[v] <= res.d) break;
      ++res.candidates;
      auto seq = search.find(all, v);
      if (search.timed_out()) break;
      if (seq) consider(*seq);
    }
    for (std::size_t i = 1; i + 1 < p.vertices.size() && !search.timed_out(); ++i) {
      const std::vector<int>& row = p_rows[i];
      for (int dd = res.d;; ++dd) {
        std::vector<char> allowed(n);
        for (std::size_t v = 0; v < n; ++v) allowed[v] = row[v] > dd;
        ++res.candidates;
        auto seq = search.find(allowed, -1);
        if (!seq || search.timed_out()) break;
        consider(*seq);
      }
    }
    res.complete = !search.timed_out();
    return res;
  }

  // Probe: certified tents through far apexes, then neighbourhood-avoiding
  // detours around each vertex of p.
  RowCache dist(g);
  std::size_t tried = 0;
  for (VertexId v : apex) {
    if (to_p[v] <= res.d || tried++ >= opts.max_tents) break;
    opts.deadline.check("stability probe");
    std::vector<VertexId> seq = shortest_path(g, a, v).vertices;
    std::vector<VertexId> back = shortest_path(g, v, b).vertices;
    seq.insert(seq.end(), back.begin() + 1, back.end());
    ++res.candidates;
    if (certify(dist, seq, w)) consider(seq);
  }
  for (std::size_t i = 1; i + 1 < p.vertices.size(); ++i) {
    const std::vector<int>& row = p_rows[i];
    for (int dd = 0;; ++dd) {
      opts.deadline.check("stability probe");
      std::vector<VertexId> seq;
      int len = avoiding_length(g, a, b, mask_within(row, dd), &seq);
      if (len < 0 || len > w.nmax) break;
      ++res.candidates;
      if (haus(seq) > res.d && certify(dist, seq, w)) consider(seq);
    }
  }
  return res;
}

StabilityProfile stability_profile(const MetricGraph& g, const PathRec& p, const std::vector<QgParams>& qs,
                                   const StabilityOptions& opts) {
  StabilityProfile prof;
  prof.mode = opts.mode;
  for (const QgParams& q : qs) {
    if (!prof.samples.empty()) {
      const QgParams& prev = prof.samples.back().q;
      if (q.kappa < prev.kappa || q.lambda < prev.lambda) {
        throw Error(ErrorCode::kInvalidParameter, "stability parameters must be nondecreasing");
      }
    }
    StabilityResult r = stability_constant(g, p, q, opts);
    if (!prof.samples.empty() && prof.samples.back().result.d > r.d) {
      const StabilityResult& prev = prof.samples.back().result;
      r.d = prev.d;
      r.witness = prev.witness;
      if (opts.mode == StabilityMode::kExact && r.complete) {
        throw Error(ErrorCode::kOracleInconsistent, "exact stability constant decreased in (kappa, lambda)");
      }
    }
    prof.samples.push_back({q, std::move(r)});
  }
  return prof;
}

// ---------------------------------------------------------------- projection

VertexSet projection(const MetricGraph& g, const VertexSet& y, VertexId x, int eps) {
  if (y.empty()) throw Error(ErrorCode::kEmptySet, "projection onto an empty set");
  std::vector<int> dx = dist_from(g, x);
  int best = std::numeric_limits<int>::max();
  for (VertexId v : y) best = std::min(best, dx[v]);
  std::vector<VertexId> out;
  for (VertexId v : y)
    if (dx[v] <= best + eps) out.push_back(v);
  return make_vertex_set(std::move(out));
}

double ContractionProfile::envelope_at(double r) const {
  if (samples.empty()) return 0.0;
  if (r >= samples.back().r) return envelope.back();
  if (r <= samples.front().r) return envelope.front() / samples.front().r * r;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    double r0 = samples[i].r, r1 = samples[i + 1].r;
    if (r <= r1) {
      double q0 = envelope[i] / r0, q1 = envelope[i + 1] / r1;
      double f = (r - r0) / (r1 - r0);
      return r * (q0 + f * (q1 - q0));
    }
  }
  return envelope.back();
}

ContractionProfile contraction_profile(const MetricGraph& g, const VertexSet& y, const ContractionOptions& opts) {
  if (y.empty()) throw Error(ErrorCode::kEmptySet, "contraction profile of an empty set");
  if (opts.eps < 0) throw Error(ErrorCode::kInvalidParameter, "eps must be >= 0");
  const std::size_t n = g.vertex_count();
  const std::size_t ny = y.size();
  std::vector<int> to_y = dist_from_set(g, y);
  std::vector<std::vector<int>> y_rows = kernels::bfs_rows(g, y);

  int reach = 0;
  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v)
    if (g.trusted(v)) reach = std::max(reach, to_y[v]);
  const int r_max = opts.r_max >= 0 ? std::min(opts.r_max, reach) : reach;

  // pi(x) as indices into y
  auto proj = [&](VertexId x, std::vector<int>& out) {
    out.clear();
    for (std::size_t k = 0; k < ny; ++k)
      if (y_rows[k][x] <= to_y[x] + opts.eps) out.push_back(static_cast<int>(k));
  };
  auto union_diam = [&](const std::vector<int>& s, const std::vector<int>& t) {
    int d = 0;
    for (int i : s) {
      for (int j : s) d = std::max(d, y_rows[i][y[j]]);
      for (int j : t) d = std::max(d, y_rows[i][y[j]]);
    }
    for (int i : t)
      for (int j : t) d = std::max(d, y_rows[i][y[j]]);
    return d;
  };

  ContractionProfile prof;
  prof.eps = opts.eps;
  std::vector<int> stamp(n, -1), depth(n, 0);
  std::vector<VertexId> queue;
  std::vector<int> px, px2;
  int stamp_id = 0;
  for (int r = 1; r <= r_max; ++r) {
    std::vector<VertexId> xs;
    for (VertexId v = 0; v < static_cast<VertexId>(n); ++v)
      if (to_y[v] == r && g.trusted(v)) xs.push_back(v);
    if (xs.empty()) continue;
    if (opts.max_points > 0 && xs.size() > opts.max_points) {
      std::vector<VertexId> pick;
      for (std::size_t i = 0; i < opts.max_points; ++i) pick.push_back(xs[i * xs.size() / opts.max_points]);
      xs = std::move(pick);
    }
    ContractionSample s;
    s.r = r;
    for (VertexId x : xs) {
      proj(x, px);
      // bounded BFS: every x' with d(x, x') <= r
      ++stamp_id;
      queue.assign(1, x);
      stamp[x] = stamp_id;
      depth[x] = 0;
      for (std::size_t h = 0; h < queue.size(); ++h) {
        VertexId u = queue[h];
        if (g.trusted(u)) {
          proj(u, px2);
          int dm = union_diam(px, px2);
          ++s.pairs;
          if (dm > s.rho || s.x < 0) {
            s.rho = dm;
            s.x = x;
            s.x2 = u;
          }
        }
        if (depth[u] == r) continue;
        for (VertexId w : g.neighbors(u)) {
          if (stamp[w] == stamp_id) continue;
          stamp[w] = stamp_id;
          depth[w] = depth[u] + 1;
          queue.push_back(w);
        }
      }
    }
    prof.samples.push_back(s);
  }

  const std::size_t m = prof.samples.size();
  prof.envelope.assign(m, 0.0);
  double sup = 0.0;
  for (std::size_t i = m; i-- > 0;) {
    sup = std::max(sup, static_cast<double>(prof.samples[i].rho) / prof.samples[i].r);
    prof.envelope[i] = prof.samples[i].r * sup;
  }
  if (m == 0) {
    prof.sublinear = true;
    return prof;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  const int r_lo = prof.samples.front().r + (prof.samples.back().r - prof.samples.front().r) / 2;
  for (std::size_t i = 0; i < m; ++i) {
    if (prof.samples[i].r < r_lo || prof.envelope[i] <= 0) continue;
    double x = std::log(static_cast<double>(prof.samples[i].r)), yv = std::log(prof.envelope[i]);
    sx += x;
    sy += yv;
    sxx += x * x;
    sxy += x * yv;
    ++cnt;
  }
  double den = cnt * sxx - sx * sx;
  prof.exponent = cnt >= 2 && den > 0 ? (cnt * sxy - sx * sy) / den : 0.0;
  double ratio = prof.envelope.back() / prof.samples.back().r;
  prof.sublinear = prof.exponent <= kSublinearMaxExponent && ratio <= kSublinearMaxRatio;
  return prof;
}

// ---------------------------------------------------------------- Lemma check

ContractLemmaReport verify_contract_lemma(const MetricGraph& g, const VertexSet& gamma, const PathRec& h, int k,
                                          const std::function<double(int)>& rho) {
  if (k < 1) throw Error(ErrorCode::kInvalidParameter, "K must be >= 1");
  if (gamma.empty()) throw Error(ErrorCode::kEmptySet, "gamma is empty");
  std::vector<int> to_g = dist_from_set(g, gamma);
  for (VertexId v : h.vertices) {
    if (to_g[v] < k) {
      throw Error(ErrorCode::kHypothesisViolated,
                  "h reaches distance " + std::to_string(to_g[v]) + " < K = " + std::to_string(k));
    }
  }
  if (to_g[h.front()] != k || to_g[h.back()] != k) {
    throw Error(ErrorCode::kHypothesisViolated, "endpoints of h are not at distance exactly K");
  }

  ContractLemmaReport rep;
  rep.k = k;
  rep.property1 = true;
  rep.property2 = true;
  const std::size_t last = h.vertices.size() - 1;
  std::size_t begin = 0;
  while (true) {
    VertexId x = h.vertices[begin];
    ContractPiece piece;
    piece.begin = begin;
    piece.r = to_g[x];
    std::vector<int> dx = dist_from(g, x);
    std::size_t end = begin;
    while (end < last && dx[h.vertices[end + 1]] <= piece.r) ++end;
    piece.end = end;
    piece.length = dx[h.vertices[end]];
    for (std::size_t i = begin; i <= end; ++i) rep.property2 = rep.property2 && dx[h.vertices[i]] <= piece.r;
    rep.pieces.push_back(piece);
    if (end == last) break;
    if (piece.length != piece.r) rep.property1 = false;
    begin = end;
  }

  rep.rho_k = rho(k);
  rep.lhs = rep.rho_k / k;
  const double disp = h.endpoint_dist;
  if (disp <= 0) {
    rep.rhs = -std::numeric_limits<double>::infinity();
  } else {
    double sl = h.arclength() / disp;
    rep.rhs = (1.0 - (2.0 * k + rep.rho_k) / disp) / sl;
  }
  rep.holds = rep.lhs >= rep.rhs - 1e-12;
  return rep;
}

// ---------------------------------------------------------------- Property 5

Property5Result property5_constant(const MetricGraph& g, const PathRec& p, Ratio c) {
  check_endpoints(g, p);
  Property5Result res;
  res.budget = budget_of(c, p.endpoint_dist);
  const VertexId a = p.front(), b = p.back();
  res.k = -1;
  for (VertexId v : p.vertices) {
    std::vector<int> dv = dist_from(g, v);
    // max over budget paths of d(v, path): the first D whose neighbourhood
    // cannot be avoided
    std::vector<VertexId> path, last;
    int f = 0;
    while (true) {
      int len = avoiding_length(g, a, b, mask_within(dv, f), &path);
      if (len < 0 || len > res.budget) break;
      last = path;
      ++f;
    }
    res.per_vertex.push_back(f);
    if (f > res.k) {
      res.k = f;
      res.worst = v;
      res.witness = f == 0 ? p.vertices : last;
    }
  }
  return res;
}

}  // namespace stablab
