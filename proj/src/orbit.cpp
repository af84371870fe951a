#include "stablab/orbit.hpp"

#include <algorithm>
#include <cmath>

#include "stablab/error.hpp"
#include "stablab/kernels.hpp"
#include "stablab/metric.hpp"

namespace stablab {

namespace {

int effective_margin(const GroupBall& ball, int margin) { return margin >= 0 ? margin : ball.margin; }

}  // namespace

int max_domain_radius(const GroupBall& ball, const std::vector<Word>& h_gens, int margin) {
  std::size_t longest = 0;
  for (const Word& w : h_gens) longest = std::max(longest, ball.oracle->normal_form(w).size());
  if (longest == 0) throw Error(ErrorCode::kInvalidParameter, "subgroup generators are trivial");
  int room = ball.radius - effective_margin(ball, margin);
  return std::max(0, room / static_cast<int>(longest));
}

OrbitMap orbit_map(const GroupBall& ball, std::shared_ptr<const MetricGraph> target, std::vector<Word> h_gens,
                   int domain_radius, const OrbitOptions& opts) {
  if (h_gens.empty()) throw Error(ErrorCode::kInvalidParameter, "no subgroup generators");
  if (domain_radius < 1) throw Error(ErrorCode::kInvalidParameter, "domain radius must be >= 1");
  if (target->vertex_count() < ball.graph->vertex_count()) {
    throw Error(ErrorCode::kInvalidParameter, "target graph does not contain the ambient ball");
  }
  const WordOracle& oracle = *ball.oracle;
  for (const Word& g : h_gens) {
    if (oracle.normal_form(g).empty()) throw Error(ErrorCode::kInvalidParameter, "trivial subgroup generator");
  }
  const int limit = ball.radius - effective_margin(ball, opts.margin);

  OrbitMap m;
  m.h_gens = h_gens;
  m.domain_radius = domain_radius;
  m.target = target;
  std::vector<Word> elems{Word{}};
  std::unordered_map<Word, VertexId, WordHash> index{{Word{}, 0}};
  m.domain_length.push_back(0);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (m.domain_length[i] == domain_radius) continue;
    for (const Word& g : h_gens) {
      for (const Word& step : {g, inverse(g)}) {
        Word c = oracle.normal_form(concat(elems[i], step));
        auto [it, inserted] = index.emplace(c, static_cast<VertexId>(elems.size()));
        if (inserted) {
          elems.push_back(c);
          m.domain_length.push_back(m.domain_length[i] + 1);
        }
        VertexId j = it->second;
        if (j != static_cast<VertexId>(i)) edges.emplace_back(std::min<VertexId>(i, j), std::max<VertexId>(i, j));
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  GraphMeta meta;
  meta.provenance = "orbit domain";
  meta.basepoint = 0;
  meta.radius = domain_radius;
  if (elems.size() == 1) {
    m.domain = std::make_shared<MetricGraph>(build_graph(1, {}, meta));
  } else {
    m.domain = std::make_shared<MetricGraph>(build_graph(elems.size(), edges, meta));
  }
  for (const Word& e : elems) {
    auto v = ball.find(e);
    if (!v || ball.length(*v) > limit) {
      throw Error(ErrorCode::kImageEscapesBall, "orbit point " + ball.alphabet.format(e) +
                                                    " lies outside the trusted radius " + std::to_string(limit));
    }
    m.image.push_back(*v);
  }
  return m;
}

double top3_variation(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  std::size_t from = values.size() >= 3 ? values.size() - 3 : 0;
  auto [lo, hi] = std::minmax_element(values.begin() + from, values.end());
  if (*hi <= 0) return 0.0;
  return (*hi - *lo) / *hi;
}

DistortionProfile distortion_profile(const OrbitMap& m) {
  const std::size_t k = m.image.size();
  std::vector<VertexId> dom(k);
  for (std::size_t i = 0; i < k; ++i) dom[i] = static_cast<VertexId>(i);
  auto dh_rows = kernels::bfs_rows(*m.domain, dom);
  auto dx_rows = kernels::bfs_rows(*m.target, m.image);

  DistortionProfile prof;
  for (int r = 1; r <= m.domain_radius; ++r) {
    double kappa = 1.0;
    bool collapsed = false;
    for (std::size_t i = 0; i < k; ++i) {
      if (m.domain_length[i] > r) continue;
      for (std::size_t j = i + 1; j < k; ++j) {
        if (m.domain_length[j] > r) continue;
        int dh = dh_rows[i][j];
        int dx = dx_rows[i][m.image[j]];
        if (dx == 0) {
          collapsed = true;
          continue;
        }
        kappa = std::max({kappa, static_cast<double>(dh) / dx, static_cast<double>(dx) / dh});
      }
    }
    double lambda = 0.0;
    if (collapsed) {
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
          if (m.domain_length[i] <= r && m.domain_length[j] <= r && dx_rows[i][m.image[j]] == 0)
            lambda = std::max(lambda, dh_rows[i][j] / kappa);
    }
    prof.samples.push_back({r, kappa, lambda});
  }

  std::vector<double> kap;
  for (const auto& s : prof.samples) kap.push_back(s.kappa);
  prof.undistorted = kap.size() >= 3 && top3_variation(kap) < 0.05;
  if (kap.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& s : prof.samples) {
      double x = std::log(static_cast<double>(s.r)), y = std::log(s.kappa);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    double n = static_cast<double>(kap.size());
    double den = n * sxx - sx * sx;
    prof.growth_exponent = den > 0 ? (n * sxy - sx * sy) / den : 0.0;
  }
  return prof;
}

}  // namespace stablab
