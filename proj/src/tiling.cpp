#include "stablab/tiling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <unordered_map>

#include "stablab/error.hpp"
#include "stablab/metric.hpp"

namespace stablab {

namespace {

// Hyperboloid model: points (x, y, z) with z^2 - x^2 - y^2 = 1, isometries
// are 3x3 Lorentz matrices.
using Vec = std::array<double, 3>;
using Mat = std::array<std::array<double, 3>, 3>;

Mat mul(const Mat& a, const Mat& b) {
  Mat c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Vec act(const Mat& a, const Vec& v) {
  Vec out{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) out[i] += a[i][k] * v[k];
  return out;
}

Mat rotation(double theta) {
  double c = std::cos(theta), s = std::sin(theta);
  return Mat{{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}};
}

Mat boost_x(double r) {
  double c = std::cosh(r), s = std::sinh(r);
  return Mat{{{c, 0, s}, {0, 1, 0}, {s, 0, c}}};
}

// Distinct vertices (and face centres) are at least one edge length apart in
// the hyperbolic metric, and hence in the (x, y) chart; a grid of cell 1/4
// with a neighbourhood probe identifies points robustly.
class PointIndex {
 public:
  std::optional<VertexId> find(const Vec& v) const {
    auto [cx, cy] = cell(v);
    for (long dx = -1; dx <= 1; ++dx)
      for (long dy = -1; dy <= 1; ++dy) {
        auto it = cells_.find({cx + dx, cy + dy});
        if (it == cells_.end()) continue;
        for (VertexId id : it->second) {
          const Vec& w = points_[id];
          if (std::abs(w[0] - v[0]) < 1e-3 && std::abs(w[1] - v[1]) < 1e-3) return id;
        }
      }
    return std::nullopt;
  }
  VertexId add(const Vec& v) {
    VertexId id = static_cast<VertexId>(points_.size());
    points_.push_back(v);
    cells_[cell(v)].push_back(id);
    return id;
  }
  const Vec& at(VertexId id) const { return points_[id]; }

 private:
  static std::pair<long, long> cell(const Vec& v) {
    return {static_cast<long>(std::floor(v[0] * 4)), static_cast<long>(std::floor(v[1] * 4))};
  }
  std::vector<Vec> points_;
  std::map<std::pair<long, long>, std::vector<VertexId>> cells_;
};

std::unordered_map<VertexId, VertexId> rotation_at(const std::vector<std::vector<VertexId>>& faces,
                                                   const std::vector<std::vector<std::size_t>>& faces_of,
                                                   VertexId v) {
  std::unordered_map<VertexId, VertexId> succ;
  for (std::size_t f : faces_of[v]) {
    const auto& c = faces[f];
    auto pos = std::find(c.begin(), c.end(), v) - c.begin();
    VertexId prev = c[(pos + c.size() - 1) % c.size()];
    VertexId next = c[(pos + 1) % c.size()];
    succ[next] = prev;
  }
  return succ;
}

}  // namespace

TilingGraph tiling_graph(int p, int q, int layers, const TilingOptions& opts) {
  if (p < 3 || q < 3 || (p - 2) * (q - 2) <= 4) {
    throw Error(ErrorCode::kNotHyperbolicType, "{" + std::to_string(p) + "," + std::to_string(q) +
                                                   "} is not hyperbolic: need (p-2)(q-2) > 4");
  }
  if (layers < 1) throw Error(ErrorCode::kInvalidParameter, "tiling needs at least one layer");

  const double pi = std::numbers::pi;
  // Circumradius of the central p-gon.
  const double rho = std::acosh(1.0 / (std::tan(pi / p) * std::tan(pi / q)));
  const Vec origin{0, 0, 1};
  std::vector<Vec> corner(p);
  for (int i = 0; i < p; ++i) {
    double th = 2 * pi * i / p;
    corner[i] = {std::sinh(rho) * std::cos(th), std::sinh(rho) * std::sin(th), std::cosh(rho)};
  }
  // Rotation by 2*pi/q about corner 0, and the rotations carrying corner 0 to
  // corner i.
  const Mat to_corner0 = boost_x(rho);
  const Mat from_corner0 = boost_x(-rho);
  const Mat spin = mul(to_corner0, mul(rotation(2 * pi / q), from_corner0));
  std::vector<Mat> face_turn(p);
  for (int i = 0; i < p; ++i) face_turn[i] = rotation(2 * pi * i / p);

  PointIndex verts, centres;
  std::vector<Mat> face_map;
  TilingGraph t;
  t.p = p;
  t.q = q;
  t.layers = layers;
  std::vector<std::vector<VertexId>> faces;

  auto add_face = [&](const Mat& g, int layer) {
    Vec c = act(g, origin);
    if (centres.find(c)) return;
    centres.add(c);
    face_map.push_back(g);
    std::vector<VertexId> cyc;
    for (int i = 0; i < p; ++i) {
      Vec v = act(g, corner[i]);
      auto id = verts.find(v);
      if (!id) {
        id = verts.add(v);
        t.layer_of.push_back(layer);
      }
      cyc.push_back(*id);
    }
    faces.push_back(std::move(cyc));
  };

  Mat identity{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  add_face(identity, 0);
  t.vertices_after.push_back(t.layer_of.size());
  // For each vertex, a face containing it and the corner index it occupies.
  std::vector<std::pair<std::size_t, int>> home;
  auto record_homes = [&](std::size_t from_face) {
    for (std::size_t f = from_face; f < faces.size(); ++f)
      for (int i = 0; i < p; ++i)
        if (static_cast<std::size_t>(faces[f][i]) >= home.size()) home.emplace_back(f, i);
  };
  record_homes(0);
  std::vector<char> expanded(t.layer_of.size(), 0);
  auto expand = [&](std::size_t v, int layer) {
    expanded[v] = 1;
    auto [f, i] = home[v];
    // Faces around this vertex: the spin about corner 0, moved to corner i of
    // face f.
    Mat g = mul(face_map[f], face_turn[i]);
    for (int j = 0; j < q; ++j) {
      g = mul(g, spin);
      add_face(g, layer);
    }
  };

  if (opts.ball_radius < 0) {
    for (int layer = 1; layer <= layers; ++layer) {
      std::size_t faces_before = faces.size();
      std::size_t verts_before = t.layer_of.size();
      for (std::size_t v = 0; v < verts_before; ++v) {
        if (!expanded[v] && t.layer_of[v] == layer - 1) expand(v, layer);
      }
      record_homes(faces_before);
      expanded.resize(t.layer_of.size(), 0);
      t.vertices_after.push_back(t.layer_of.size());
    }
  } else {
    std::vector<std::vector<VertexId>> adj;
    std::size_t edges_seen = 0;
    for (int round = 1;; ++round) {
      adj.resize(t.layer_of.size());
      for (; edges_seen < faces.size(); ++edges_seen) {
        const auto& c = faces[edges_seen];
        for (std::size_t i = 0; i < c.size(); ++i) {
          VertexId a = c[i], b = c[(i + 1) % c.size()];
          if (std::find(adj[a].begin(), adj[a].end(), b) == adj[a].end()) {
            adj[a].push_back(b);
            adj[b].push_back(a);
          }
        }
      }
      std::vector<int> dist(adj.size(), -1);
      std::vector<VertexId> queue{0};
      dist[0] = 0;
      for (std::size_t h = 0; h < queue.size(); ++h)
        for (VertexId w : adj[queue[h]])
          if (dist[w] < 0) {
            dist[w] = dist[queue[h]] + 1;
            queue.push_back(w);
          }
      std::size_t faces_before = faces.size();
      std::size_t verts_before = t.layer_of.size();
      bool grew = false;
      for (std::size_t v = 0; v < verts_before; ++v) {
        if (!expanded[v] && dist[v] <= opts.ball_radius) {
          expand(v, round);
          grew = true;
        }
      }
      if (!grew) break;
      record_homes(faces_before);
      expanded.resize(t.layer_of.size(), 0);
      t.vertices_after.push_back(t.layer_of.size());
      t.layers = round;
    }
  }

  std::set<Edge> induced;
  if (opts.ball_radius >= 0) {
    // Keep the ball of radius ball_radius + 1; beyond it the patch is an
    // artefact of expanding the boundary of the ball.
    std::vector<std::vector<VertexId>> adj(t.layer_of.size());
    for (const auto& c : faces)
      for (std::size_t i = 0; i < c.size(); ++i) {
        adj[c[i]].push_back(c[(i + 1) % c.size()]);
        adj[c[(i + 1) % c.size()]].push_back(c[i]);
      }
    std::vector<int> dist(adj.size(), -1);
    std::vector<VertexId> queue{0};
    dist[0] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (VertexId w : adj[queue[h]])
        if (dist[w] < 0) {
          dist[w] = dist[queue[h]] + 1;
          queue.push_back(w);
        }
    std::vector<VertexId> remap(adj.size(), -1);
    std::vector<int> layer_of;
    for (std::size_t v = 0; v < adj.size(); ++v) {
      if (dist[v] >= 0 && dist[v] <= opts.ball_radius + 1) {
        remap[v] = static_cast<VertexId>(layer_of.size());
        layer_of.push_back(t.layer_of[v]);
      }
    }
    for (const auto& c : faces)
      for (std::size_t i = 0; i < c.size(); ++i) {
        VertexId a = remap[c[i]], b = remap[c[(i + 1) % c.size()]];
        if (a >= 0 && b >= 0) induced.emplace(std::min(a, b), std::max(a, b));
      }
    std::vector<std::vector<VertexId>> kept;
    for (auto& c : faces) {
      if (std::all_of(c.begin(), c.end(), [&](VertexId v) { return remap[v] >= 0; })) {
        for (VertexId& v : c) v = remap[v];
        kept.push_back(std::move(c));
      }
    }
    faces = std::move(kept);
    t.layer_of = std::move(layer_of);
    t.vertices_after.push_back(t.layer_of.size());
  }

  const std::size_t n = t.layer_of.size();
  std::set<Edge> edge_set = std::move(induced);
  for (const auto& c : faces)
    for (std::size_t i = 0; i < c.size(); ++i) {
      VertexId a = c[i], b = c[(i + 1) % c.size()];
      edge_set.emplace(std::min(a, b), std::max(a, b));
    }
  std::vector<Edge> edges(edge_set.begin(), edge_set.end());

  std::vector<std::vector<std::size_t>> faces_of(n);
  for (std::size_t f = 0; f < faces.size(); ++f)
    for (VertexId v : faces[f]) faces_of[v].push_back(f);
  t.saturated.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v) t.saturated[v] = static_cast<int>(faces_of[v].size()) == q;

  int frontier = std::numeric_limits<int>::max();
  {
    MetricGraph tmp = build_graph(n, edges);
    std::vector<int> radial = dist_from(tmp, 0);
    for (std::size_t v = 0; v < n; ++v)
      if (!t.saturated[v]) frontier = std::min(frontier, radial[v]);
  }
  GraphMeta meta;
  meta.provenance = "tiling {" + std::to_string(p) + "," + std::to_string(q) + "} layers=" +
                    std::to_string(t.layers) +
                    (opts.ball_radius >= 0 ? " ball=" + std::to_string(opts.ball_radius) : std::string());
  meta.basepoint = 0;
  meta.radius = opts.ball_radius >= 0 ? opts.ball_radius : layers;
  meta.trusted_radius = std::max(0, frontier - 1);
  std::vector<std::string> labels(n);
  for (std::size_t v = 0; v < n; ++v) labels[v] = std::to_string(t.layer_of[v]) + ":" + std::to_string(v);
  t.graph = std::make_shared<MetricGraph>(build_graph(n, edges, meta, labels));
  t.faces = std::move(faces);

  auto step = [&](VertexId at, VertexId from, int offset) {
    auto succ = rotation_at(t.faces, faces_of, at);
    VertexId cur = from;
    for (int i = 0; i < offset; ++i) cur = succ.at(cur);
    return cur;
  };
  // Counterclockwise offset from the backward to the forward neighbour at
  // line index k.
  auto turn = [&](long k) { return (std::abs(k) % 2 == 0) ? q / 2 : (q + 1) / 2; };

  const VertexId v0 = 0;
  VertexId u0 = t.graph->neighbors(v0).front();
  std::vector<VertexId> fwd{v0, step(v0, u0, turn(0))};
  for (long k = 1; t.saturated[fwd.back()]; ++k) fwd.push_back(step(fwd[k], fwd[k - 1], turn(k)));
  std::vector<VertexId> back{v0, u0};
  for (long k = 1; t.saturated[back.back()]; ++k) back.push_back(step(back[k], back[k - 1], q - turn(-k)));
  t.central_line.assign(back.rbegin(), back.rend() - 1);
  t.center_index = t.central_line.size();
  t.central_line.insert(t.central_line.end(), fwd.begin(), fwd.end());
  return t;
}

PathRec TilingGraph::central_segment(int length) const {
  if (length < 0) throw Error(ErrorCode::kInvalidParameter, "negative length");
  long lo = static_cast<long>(center_index) - length / 2;
  long hi = lo + length;
  if (lo < 0 || hi >= static_cast<long>(central_line.size())) {
    throw Error(ErrorCode::kMarginViolation, "central segment of length " + std::to_string(length) +
                                                 " does not fit in the tiling patch");
  }
  return make_path(*graph, std::vector<VertexId>(central_line.begin() + lo, central_line.begin() + hi + 1));
}

}  // namespace stablab
