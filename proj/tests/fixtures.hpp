#pragma once

// Named small graphs (<= 60 vertices) for oracle cross-checks, shared by the
// unit tests and the acceptance runner.

#include <string>
#include <vector>

#include "stablab/group.hpp"
#include "test_graphs.hpp"

namespace stablab::testing {

struct Fixture {
  std::string name;
  MetricGraph g;
};

// Drops ball metadata: fixtures are whole graphs, not truncations.
inline MetricGraph plain(const MetricGraph& g) {
  auto e = g.edges();
  return build_graph(g.vertex_count(), e);
}

inline std::vector<Fixture> oracle_fixtures() {
  std::vector<Fixture> out;
  out.push_back({"cycle6+chord", cycle_graph(6, {{0, 3}})});
  out.push_back({"cycle8", cycle_graph(8)});
  out.push_back({"cycle10+chords", cycle_graph(10, {{0, 5}, {2, 7}})});
  out.push_back({"cycle12+chord", cycle_graph(12, {{1, 6}})});
  out.push_back({"cycle16+chords", cycle_graph(16, {{0, 8}, {4, 12}})});
  out.push_back({"cycle20", cycle_graph(20)});
  out.push_back({"theta(2,3,4)", theta_graph({2, 3, 4})});
  out.push_back({"theta(4,4,4)", theta_graph({4, 4, 4})});
  out.push_back({"theta(1,5,9)", theta_graph({1, 5, 9})});
  out.push_back({"theta(3,6,6,8)", theta_graph({3, 6, 6, 8})});
  out.push_back({"path9", path_graph(9)});
  out.push_back({"grid4x4", grid_graph(4, 4)});
  out.push_back({"grid6x5", grid_graph(6, 5)});
  out.push_back({"grid7x7", grid_graph(7, 7)});
  out.push_back({"diamond4", diamond(4).g});
  out.push_back({"tree40", random_graph(40, 0, 3)});
  out.push_back({"random30+8", random_graph(30, 8, 5)});
  out.push_back({"random45+12", random_graph(45, 12, 9)});
  out.push_back({"random60+20", random_graph(60, 20, 13)});
  out.push_back({"ball F2 r2", plain(*cayley_ball(GroupSpec::free(2), 2).graph)});
  out.push_back({"ball Z^2 r4", plain(*cayley_ball(GroupSpec::free_abelian(2), 4).graph)});
  out.push_back({"ball Z^2*Z r2", plain(*cayley_ball(GroupSpec::parse("free_product(free_abelian(2;xy),free(1;b))"), 2).graph)});
  out.push_back({"ball Z^3 r2", plain(*cayley_ball(GroupSpec::free_abelian(3), 2).graph)});
  out.push_back({"ball genus2 r1",
                 plain(*cayley_ball(GroupSpec::small_cancellation("abcd", {"aBcDAbCd"}), 1).graph)});
  return out;
}

// Endpoint pairs used on a fixture: the diametral pair from vertex 0 and a
// few more, deterministic.
inline std::vector<std::pair<VertexId, VertexId>> fixture_pairs(const MetricGraph& g) {
  const auto d = floyd(g);
  const int n = static_cast<int>(g.vertex_count());
  std::vector<std::pair<VertexId, VertexId>> out;
  for (int step : {0, 1, 2, 3}) {
    int a = (step * 7) % n;
    int b = a;
    for (int v = 0; v < n; ++v)
      if (d[a][v] > d[a][b]) b = v;
    if (d[a][b] >= 2) out.emplace_back(a, b);
  }
  return out;
}

}  // namespace stablab::testing
