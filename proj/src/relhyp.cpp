#include "stablab/relhyp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stablab/error.hpp"
#include "stablab/kernels.hpp"
#include "stablab/metric.hpp"
#include "stablab/stability.hpp"

namespace stablab {

namespace {

struct UnionFind {
  std::vector<VertexId> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  VertexId find(VertexId v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(VertexId a, VertexId b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::vector<std::vector<int>> intrinsic_matrix(const GroupBall& ball, const std::vector<VertexId>& members) {
  const std::size_t m = members.size();
  std::vector<std::vector<int>> d(m, std::vector<int>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) d[i][j] = d[j][i] = intrinsic_distance(ball, members[i], members[j]);
  return d;
}

int ceil_log2(int x) {
  int k = 0;
  while ((1 << k) < x) ++k;
  return k;
}

}  // namespace

PeripheralStructure peripheral_structure(const GroupBall& ball, const std::vector<std::string>& generators) {
  if (ball.spec.family == Family::kSmallCancellation) {
    throw Error(ErrorCode::kUnsupported, "peripheral cosets need a family with geodesic normal forms");
  }
  PeripheralStructure ps;
  ps.generators = generators;
  const MetricGraph& g = *ball.graph;
  const std::size_t n = g.vertex_count();
  const int limit = ball.radius - ball.margin;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    for (char c : generators[i]) {
      if (ball.alphabet.symbols().find(c) == std::string::npos) {
        throw Error(ErrorCode::kPeripheralNotSubgenerated,
                    std::string("peripheral generator '") + c + "' is not an ambient generator");
      }
    }
    std::vector<int> idx = ball.alphabet.indices(generators[i]);
    if (idx.empty()) throw Error(ErrorCode::kPeripheralNotSubgenerated, "peripheral without generators");
    ps.gen_indices.push_back(idx);

    UnionFind uf(n);
    for (VertexId u = 0; u < static_cast<VertexId>(n); ++u) {
      for (int gi : idx) {
        Word w = ball.words[u];
        w.push_back(gi + 1);
        if (auto v = ball.find(w)) uf.unite(u, *v);
      }
    }
    std::vector<int> of(n, -1);
    for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
      VertexId root = uf.find(v);
      if (of[root] < 0) {
        of[root] = static_cast<int>(ps.cosets.size());
        Coset c;
        c.peripheral = static_cast<int>(i);
        c.rep = root;  // roots are component minima
        c.partial = ball.length(root) > limit;
        ps.cosets.push_back(std::move(c));
      }
      of[v] = of[root];
      ps.cosets[of[v]].members.push_back(v);
    }
    ps.coset_of.push_back(std::move(of));
  }
  return ps;
}

int intrinsic_distance(const GroupBall& ball, VertexId u, VertexId v) {
  return static_cast<int>(ball.oracle->normal_form(concat(inverse(ball.words[u]), ball.words[v])).size());
}

int intrinsic_diameter(const GroupBall& ball, const std::vector<VertexId>& members) {
  int d = 0;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j) d = std::max(d, intrinsic_distance(ball, members[i], members[j]));
  return d;
}

ConedGraph cone_off(const GroupBall& ball, const PeripheralStructure& ps) {
  const MetricGraph& g = *ball.graph;
  ConedGraph out;
  std::vector<Edge> edges = g.edges();
  for (const Coset& c : ps.cosets) {
    for (std::size_t i = 0; i < c.members.size(); ++i)
      for (std::size_t j = i + 1; j < c.members.size(); ++j)
        if (!g.adjacent(c.members[i], c.members[j])) out.added.emplace_back(c.members[i], c.members[j]);
  }
  std::sort(out.added.begin(), out.added.end());
  out.added.erase(std::unique(out.added.begin(), out.added.end()), out.added.end());
  edges.insert(edges.end(), out.added.begin(), out.added.end());
  GraphMeta meta;
  meta.provenance = "cone(" + ball.spec.canonical() + ")";
  meta.basepoint = 0;
  out.graph = std::make_shared<MetricGraph>(build_graph(g.vertex_count(), edges, meta));
  return out;
}

CuspedGraph cusp_space(const GroupBall& ball, const PeripheralStructure& ps, int n_max) {
  if (n_max < 0) throw Error(ErrorCode::kInvalidParameter, "horoball depth must be >= 0");
  const MetricGraph& g = *ball.graph;
  CuspedGraph out;
  out.base_vertices = g.vertex_count();
  out.n_max = n_max;
  std::vector<Edge> edges = g.edges();
  out.base_of.resize(g.vertex_count());
  std::iota(out.base_of.begin(), out.base_of.end(), 0);
  VertexId next = static_cast<VertexId>(g.vertex_count());
  if (n_max > 0) {
    for (std::size_t ci = 0; ci < ps.cosets.size(); ++ci) {
      const Coset& c = ps.cosets[ci];
      // single points of a coset are ball-boundary artefacts; a horoball on
      // them would only add a dangling ray
      if (c.members.size() < 2) continue;
      auto dp = intrinsic_matrix(ball, c.members);
      int diam = 0;
      for (const auto& row : dp) diam = std::max(diam, *std::max_element(row.begin(), row.end()));
      Horoball hb;
      hb.coset = static_cast<int>(ci);
      hb.depth = std::min(n_max, ceil_log2(std::max(diam, 1)) + 1);
      hb.first = next;
      hb.width = c.members.size();
      next += static_cast<VertexId>(hb.depth * hb.width);
      for (int level = 1; level <= hb.depth; ++level) {
        const long long reach = 1LL << level;
        for (std::size_t i = 0; i < hb.width; ++i) {
          VertexId v = hb.vertex(i, level);
          VertexId up = level == 1 ? c.members[i] : hb.vertex(i, level - 1);
          edges.emplace_back(up, v);
          out.base_of.push_back(c.members[i]);
          for (std::size_t j = i + 1; j < hb.width; ++j)
            if (dp[i][j] <= reach) edges.emplace_back(v, hb.vertex(j, level));
        }
      }
      out.horoballs.push_back(hb);
    }
  }
  GraphMeta meta;
  meta.provenance = "cusp(" + ball.spec.canonical() + ")";
  meta.basepoint = 0;
  out.graph = std::make_shared<MetricGraph>(build_graph(static_cast<std::size_t>(next), edges, meta));
  return out;
}

ProjectionSet almost_projection(const GroupBall& ball, const PeripheralStructure& ps, int coset, VertexId x) {
  if (coset < 0 || coset >= static_cast<int>(ps.cosets.size())) {
    throw Error(ErrorCode::kCosetOutsideBall, "coset " + std::to_string(coset) + " does not meet the ball");
  }
  if (!ball.graph->contains(x)) throw Error(ErrorCode::kInvalidVertex, "vertex outside the ball");
  const Coset& c = ps.cosets[coset];
  std::vector<int> dx = dist_from(*ball.graph, x);
  int best = dx[c.members.front()];
  for (VertexId y : c.members) best = std::min(best, dx[y]);
  ProjectionSet out;
  out.coset = coset;
  for (VertexId y : c.members)
    if (dx[y] <= best + 1) out.vertices.push_back(y);
  out.diameter = intrinsic_diameter(ball, out.vertices);
  return out;
}

PeripheralDiamTable peripheral_diam(const GroupBall& ball, const PeripheralStructure& ps,
                                    const std::vector<VertexId>& h_orbit) {
  PeripheralDiamTable out;
  out.diam.assign(ps.cosets.size(), 0);
  if (h_orbit.empty()) return out;
  auto rows = kernels::bfs_rows(*ball.graph, h_orbit);
  std::vector<std::vector<VertexId>> unions(ps.cosets.size());
  for (const auto& dx : rows) {
    for (std::size_t ci = 0; ci < ps.cosets.size(); ++ci) {
      const Coset& c = ps.cosets[ci];
      int best = dx[c.members.front()];
      for (VertexId y : c.members) best = std::min(best, dx[y]);
      for (VertexId y : c.members)
        if (dx[y] <= best + 1) unions[ci].push_back(y);
    }
  }
#pragma omp parallel for schedule(dynamic)
  for (std::size_t ci = 0; ci < ps.cosets.size(); ++ci) {
    auto& u = unions[ci];
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    out.diam[ci] = intrinsic_diameter(ball, u);
  }
  for (std::size_t ci = 0; ci < ps.cosets.size(); ++ci) {
    if (ps.cosets[ci].partial) continue;
    if (out.argmax < 0 || out.diam[ci] > out.max_diam) {
      out.max_diam = out.diam[ci];
      out.argmax = static_cast<int>(ci);
    }
  }
  return out;
}

std::vector<Word> subgroup_axes(const std::vector<Word>& h_gens) {
  std::vector<Word> out = h_gens;
  if (h_gens.size() > 1) {
    Word prod;
    for (const Word& g : h_gens) prod = concat(prod, g);
    out.push_back(prod);
  }
  return out;
}

std::vector<VertexId> axis_images(const GroupBall& ball, const Word& h, int limit) {
  const WordOracle& o = *ball.oracle;
  std::vector<VertexId> fwd, bwd;
  Word up, down;
  const Word hi = inverse(h);
  while (true) {
    Word nu = o.normal_form(concat(up, h)), nd = o.normal_form(concat(down, hi));
    if (static_cast<int>(nu.size()) > limit || static_cast<int>(nd.size()) > limit) break;
    auto vu = ball.find(nu), vd = ball.find(nd);
    if (!vu || !vd) break;
    fwd.push_back(*vu);
    bwd.push_back(*vd);
    up = std::move(nu);
    down = std::move(nd);
    if (up.empty()) break;  // torsion: the axis closed up
  }
  std::vector<VertexId> out(bwd.rbegin(), bwd.rend());
  out.push_back(0);
  out.insert(out.end(), fwd.begin(), fwd.end());
  return out;
}

PathRec orbit_path(const MetricGraph& target, const std::vector<VertexId>& images) {
  if (images.empty()) throw Error(ErrorCode::kEmptySet, "no orbit points");
  std::vector<VertexId> verts{images.front()};
  for (std::size_t i = 1; i < images.size(); ++i) {
    PathRec seg = shortest_path(target, images[i - 1], images[i]);
    verts.insert(verts.end(), seg.vertices.begin() + 1, seg.vertices.end());
  }
  return make_path(target, std::move(verts));
}

bool stabilizes(const std::vector<double>& values) { return values.size() >= 3 && top3_variation(values) < 0.05; }

namespace {

struct Stage {
  GroupBall ball;
  PeripheralStructure ps;
  std::vector<Word> h_gens;
  int limit = 0;
  int domain_radius = 0;
};

Stage make_stage(const GroupSpec& spec, const std::vector<std::string>& peripherals,
                 const std::vector<std::string>& subgroup, int radius, const CriterionOptions& opts) {
  BallOptions bo;
  bo.margin = opts.margin;
  Stage s{opts.ball_source ? opts.ball_source(spec, radius, bo) : cayley_ball(spec, radius, bo), {}, {}, 0, 0};
  s.ps = peripheral_structure(s.ball, peripherals);
  for (const std::string& w : subgroup) s.h_gens.push_back(s.ball.alphabet.parse(w));
  if (s.h_gens.empty()) throw Error(ErrorCode::kInvalidParameter, "subgroup needs generators");
  s.limit = radius - s.ball.margin;
  s.domain_radius = max_domain_radius(s.ball, s.h_gens);
  if (s.domain_radius < 1) {
    throw Error(ErrorCode::kMarginViolation,
                "radius " + std::to_string(radius) + " leaves no room for the subgroup inside the trusted ball");
  }
  return s;
}

int axis_recurrence(const MetricGraph& target, const Stage& s, const Word& h, Ratio t, Ratio c) {
  std::vector<VertexId> images = axis_images(s.ball, h, s.limit);
  if (images.size() < 3) return 0;
  return recurrence_constant(target, orbit_path(target, images), t, c).m;
}

}  // namespace

CriterionReport criterion_runner(const GroupSpec& spec, const std::vector<std::string>& peripherals,
                                 const std::vector<std::string>& subgroup, const std::vector<int>& radii,
                                 const CriterionOptions& opts) {
  CriterionReport rep;
  rep.group = spec.canonical();
  rep.peripherals = peripherals;
  rep.subgroup = subgroup;
  for (int radius : radii) {
    Stage s = make_stage(spec, peripherals, subgroup, radius, opts);
    ConedGraph cone = cone_off(s.ball, s.ps);
    CuspedGraph cusp = cusp_space(s.ball, s.ps, opts.n_max);

    CriterionRow row;
    row.radius = radius;
    row.ball_vertices = s.ball.graph->vertex_count();
    row.cusp_vertices = cusp.graph->vertex_count();
    row.domain_radius = s.domain_radius;
    for (const Word& h : subgroup_axes(s.h_gens))
      row.recurrence = std::max(row.recurrence, axis_recurrence(*s.ball.graph, s, h, opts.t, opts.c));

    OrbitMap into_cusp = orbit_map(s.ball, cusp.graph, s.h_gens, s.domain_radius);
    row.kappa_cusp = distortion_profile(into_cusp).samples.back().kappa;
    OrbitMap into_cone = orbit_map(s.ball, cone.graph, s.h_gens, s.domain_radius);
    row.kappa_cone = distortion_profile(into_cone).samples.back().kappa;
    row.peripheral_diam = peripheral_diam(s.ball, s.ps, into_cone.image).max_diam;
    rep.rows.push_back(row);
  }
  std::vector<double> rec, kcu, kco, pd;
  for (const auto& r : rep.rows) {
    rec.push_back(r.recurrence);
    kcu.push_back(r.kappa_cusp);
    kco.push_back(r.kappa_cone);
    pd.push_back(r.peripheral_diam);
  }
  rep.stable_in_g = stabilizes(rec);
  rep.undistorted_cusp = stabilizes(kcu);
  rep.bounded_peripheral = stabilizes(pd);
  rep.undistorted_cone = stabilizes(kco) && rep.bounded_peripheral;
  rep.consistent = rep.stable_in_g == rep.undistorted_cusp && rep.undistorted_cusp == rep.undistorted_cone;
  return rep;
}

PullbackReport pullback(const GroupSpec& spec, const std::vector<std::string>& peripherals,
                        const std::vector<std::string>& subgroup, const std::vector<int>& radii,
                        const CriterionOptions& opts) {
  PullbackReport rep;
  for (int radius : radii) {
    Stage s = make_stage(spec, peripherals, subgroup, radius, opts);
    CuspedGraph cusp = cusp_space(s.ball, s.ps, opts.n_max);
    PullbackRow row;
    row.radius = radius;
    OrbitMap om = orbit_map(s.ball, cusp.graph, s.h_gens, s.domain_radius);
    // a path in G of slope C maps to one of slope at most C * kappa
    double kappa = distortion_profile(om).samples.back().kappa;
    row.image_c = opts.c * Ratio(static_cast<std::int64_t>(std::ceil(kappa - 1e-9)));
    for (const Word& h : subgroup_axes(s.h_gens)) {
      row.image_recurrence =
          std::max(row.image_recurrence, axis_recurrence(*cusp.graph, s, h, opts.t, row.image_c));
      row.pulled_recurrence = std::max(row.pulled_recurrence, axis_recurrence(*s.ball.graph, s, h, opts.t, opts.c));
    }
    std::vector<int> from_e = dist_from(*cusp.graph, 0);
    for (VertexId v = 0; v < static_cast<VertexId>(cusp.base_vertices); ++v)
      if (from_e[v] <= row.image_recurrence) row.properness = std::max(row.properness, s.ball.length(v));
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace stablab
