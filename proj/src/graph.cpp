#include "stablab/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <sstream>

#include "stablab/error.hpp"
#include "stablab/metric.hpp"

namespace stablab {

bool MetricGraph::adjacent(VertexId u, VertexId v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> MetricGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (VertexId u = 0; static_cast<std::size_t>(u) < vertex_count(); ++u) {
    for (VertexId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

const std::string& MetricGraph::label(VertexId v) const {
  static const std::string kEmpty;
  if (labels_.empty()) return kEmpty;
  return labels_.at(v);
}

std::optional<VertexId> MetricGraph::find_label(std::string_view label) const {
  auto it = label_index_.find(std::string(label));
  if (it == label_index_.end()) return std::nullopt;
  return it->second;
}

bool MetricGraph::trusted(VertexId v) const {
  if (meta_.trusted_radius < 0 || radial_.empty()) return true;
  return radial_[v] <= meta_.trusted_radius;
}

MetricGraph build_graph(std::size_t n, std::span<const Edge> edges, GraphMeta meta,
                        std::vector<std::string> labels) {
  if (n == 0) throw Error(ErrorCode::kInvalidVertex, "graph needs at least one vertex");
  if (!labels.empty() && labels.size() != n) {
    throw Error(ErrorCode::kInvalidParameter, "label count does not match vertex count");
  }
  std::vector<Edge> sorted;
  sorted.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n) {
      throw Error(ErrorCode::kInvalidVertex,
                  "edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    }
    if (u == v) throw Error(ErrorCode::kSelfLoop, "vertex " + std::to_string(u));
    sorted.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(sorted.begin(), sorted.end());
  if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
    throw Error(ErrorCode::kDuplicateEdge,
                "(" + std::to_string(dup->first) + "," + std::to_string(dup->second) + ")");
  }

  MetricGraph g;
  std::vector<std::size_t> deg(n, 0);
  for (auto [u, v] : sorted) {
    ++deg[u];
    ++deg[v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + deg[i];
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (auto [u, v] : sorted) {
    g.adjacency_[fill[u]++] = v;
    g.adjacency_[fill[v]++] = u;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(g.adjacency_.begin() + g.offsets_[i], g.adjacency_.begin() + g.offsets_[i + 1]);
  }

  std::vector<int> d = dist_from(g, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i] == kUnreachable) {
      throw Error(ErrorCode::kDisconnectedGraph, "vertex " + std::to_string(i) + " unreachable from 0");
    }
  }

  g.labels_ = std::move(labels);
  for (std::size_t i = 0; i < g.labels_.size(); ++i) {
    g.label_index_.emplace(g.labels_[i], static_cast<VertexId>(i));
  }
  if (meta.basepoint >= 0) {
    if (static_cast<std::size_t>(meta.basepoint) >= n) {
      throw Error(ErrorCode::kInvalidVertex, "basepoint out of range");
    }
    g.radial_ = meta.basepoint == 0 ? std::move(d) : dist_from(g, meta.basepoint);
  }
  g.meta_ = std::move(meta);
  return g;
}

MetricGraph build_graph(std::span<const Edge> edges, GraphMeta meta) {
  VertexId top = -1;
  for (auto [u, v] : edges) top = std::max({top, u, v});
  if (edges.empty()) throw Error(ErrorCode::kInvalidVertex, "empty edge list");
  return build_graph(static_cast<std::size_t>(top) + 1, edges, std::move(meta));
}

std::string serialize_graph(const MetricGraph& g) {
  std::ostringstream out;
  const GraphMeta& m = g.meta();
  out << "# vertices=" << g.vertex_count() << " provenance=" << m.provenance << "\n";
  out << "# meta basepoint=" << m.basepoint << " radius=" << m.radius << " trusted=" << m.trusted_radius
      << "\n";
  if (g.has_labels()) {
    for (std::size_t i = 0; i < g.vertex_count(); ++i) out << "# label " << i << " " << g.labels()[i] << "\n";
  }
  for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
  return out.str();
}

namespace {

int parse_field(std::string_view line, std::string_view key) {
  auto pos = line.find(key);
  if (pos == std::string_view::npos) throw Error(ErrorCode::kIoFailure, "missing " + std::string(key));
  pos += key.size();
  auto end = line.find(' ', pos);
  std::string_view num = line.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
  int v = 0;
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
  if (ec != std::errc()) throw Error(ErrorCode::kIoFailure, "bad number for " + std::string(key));
  return v;
}

}  // namespace

MetricGraph deserialize_graph(std::string_view text) {
  std::size_t pos = 0;
  auto next_line = [&](std::string_view& line) {
    if (pos >= text.size()) return false;
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    line = text.substr(pos, end - pos);
    pos = end + 1;
    return true;
  };
  std::string_view line;
  if (!next_line(line) || !line.starts_with("# vertices=")) {
    throw Error(ErrorCode::kIoFailure, "missing graph header");
  }
  int n = parse_field(line, "vertices=");
  GraphMeta meta;
  auto prov = line.find(" provenance=");
  if (prov != std::string_view::npos) meta.provenance = std::string(line.substr(prov + 12));
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  while (next_line(line)) {
    if (line.empty()) continue;
    if (line.starts_with("# meta ")) {
      meta.basepoint = parse_field(line, "basepoint=");
      meta.radius = parse_field(line, "radius=");
      meta.trusted_radius = parse_field(line, "trusted=");
    } else if (line.starts_with("# label ")) {
      std::string_view rest = line.substr(8);
      auto sp = rest.find(' ');
      if (sp == std::string_view::npos) throw Error(ErrorCode::kIoFailure, "bad label line");
      int id = 0;
      std::from_chars(rest.data(), rest.data() + sp, id);
      if (labels.empty()) labels.resize(n);
      if (id < 0 || id >= n) throw Error(ErrorCode::kIoFailure, "label id out of range");
      labels[id] = std::string(rest.substr(sp + 1));
    } else if (line.front() == '#') {
      continue;
    } else {
      auto sp = line.find(' ');
      if (sp == std::string_view::npos) throw Error(ErrorCode::kIoFailure, "bad edge line");
      VertexId u = 0, v = 0;
      auto r1 = std::from_chars(line.data(), line.data() + sp, u);
      auto r2 = std::from_chars(line.data() + sp + 1, line.data() + line.size(), v);
      if (r1.ec != std::errc() || r2.ec != std::errc()) throw Error(ErrorCode::kIoFailure, "bad edge line");
      edges.emplace_back(u, v);
    }
  }
  return build_graph(static_cast<std::size_t>(n), edges, std::move(meta), std::move(labels));
}

PathRec make_path(const MetricGraph& g, std::vector<VertexId> vertices) {
  if (vertices.empty()) throw Error(ErrorCode::kEmptySet, "empty path");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!g.contains(vertices[i])) throw Error(ErrorCode::kInvalidVertex, std::to_string(vertices[i]));
    if (i > 0 && !g.adjacent(vertices[i - 1], vertices[i])) {
      throw Error(ErrorCode::kInvalidParameter, "path step " + std::to_string(vertices[i - 1]) + "->" +
                                                    std::to_string(vertices[i]) + " is not an edge");
    }
  }
  PathRec p;
  p.endpoint_dist = dist_from(g, vertices.front())[vertices.back()];
  p.vertices = std::move(vertices);
  return p;
}

}  // namespace stablab
