#include <gtest/gtest.h>

#include <algorithm>

#include "stablab/delta.hpp"
#include "stablab/error.hpp"
#include "stablab/kernels.hpp"
#include "stablab/metric.hpp"
#include "stablab/relhyp.hpp"
#include "stablab/group.hpp"

namespace stablab {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kUnsupported;
}

GroupSpec z2_free_product() { return GroupSpec::parse("free_product(free_abelian(2;xy),free(1;b))"); }

VertexId at(const GroupBall& b, const std::string& w) {
  auto v = b.find(b.alphabet.parse(w));
  if (!v) throw Error(ErrorCode::kInvalidVertex, "not in ball: " + w);
  return *v;
}

std::string power(char c, int n) { return std::string(n, c); }

// ---------------------------------------------------------------- cosets

TEST(Peripherals, CosetsPartitionTheBall) {
  GroupBall b = cayley_ball(GroupSpec::free(2), 4);
  PeripheralStructure ps = peripheral_structure(b, {"a"});
  std::vector<int> seen(b.graph->vertex_count(), 0);
  for (const Coset& c : ps.cosets) {
    EXPECT_EQ(c.rep, c.members.front());
    for (VertexId v : c.members) ++seen[v];
  }
  for (int s : seen) EXPECT_EQ(s, 1);
  const Coset& id = ps.cosets[ps.coset_of[0][0]];
  EXPECT_EQ(id.members.size(), 9u);  // a^-4 .. a^4
  EXPECT_FALSE(id.partial);
  EXPECT_TRUE(ps.cosets[ps.coset_of[0][at(b, "bbbb")]].partial);
}

TEST(Peripherals, Errors) {
  GroupBall b = cayley_ball(GroupSpec::free(2), 2);
  EXPECT_EQ(code_of([&] { peripheral_structure(b, {"z"}); }), ErrorCode::kPeripheralNotSubgenerated);
  GroupBall sc = cayley_ball(GroupSpec::small_cancellation("abcd", {"aBcDAbCd"}), 1);
  EXPECT_EQ(code_of([&] { peripheral_structure(sc, {"a"}); }), ErrorCode::kUnsupported);
}

TEST(Peripherals, IntrinsicMetricOfFactor) {
  GroupBall b = cayley_ball(z2_free_product(), 4);
  EXPECT_EQ(intrinsic_distance(b, at(b, "xx"), at(b, "yy")), 4);
  EXPECT_EQ(intrinsic_distance(b, at(b, "bx"), at(b, "by")), 2);
}

// ---------------------------------------------------------------- cone

TEST(Cone, CosetsCollapse) {
  GroupBall b = cayley_ball(GroupSpec::free(2), 6);
  PeripheralStructure ps = peripheral_structure(b, {"a"});
  ConedGraph cone = cone_off(b, ps);
  auto d = dist_from(*cone.graph, 0);
  EXPECT_EQ(d[at(b, "aaaaaa")], 1);
  EXPECT_EQ(d[at(b, "AAAAA")], 1);
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(d[at(b, power('b', n))], n);
  // a^2 b^2 a^-1: cone 1 + 2 + 1
  EXPECT_EQ(d[at(b, "aabbA")], 4);
}

TEST(Cone, WholeGroupPeripheral) {
  GroupBall b = cayley_ball(GroupSpec::free_abelian(2, "xy"), 3);
  ConedGraph cone = cone_off(b, peripheral_structure(b, {"xy"}));
  auto all = kernels::all_pairs(*cone.graph);
  int diam = 0;
  for (int x : all) diam = std::max(diam, x);
  EXPECT_EQ(diam, 1);
}

// ---------------------------------------------------------------- cusp

TEST(Cusp, HoroballDistancesAreLogarithmic) {
  GroupBall b = cayley_ball(GroupSpec::free(1), 40);
  CuspedGraph cu = cusp_space(b, peripheral_structure(b, {"a"}), 16);
  auto d = dist_from(*cu.graph, 0);
  for (int m = 1; m <= 40; ++m) {
    // climb n levels, cross ceil(m / 2^n) horizontal edges, climb down
    int expect = 1 << 30;
    for (int n = 0; n < 8; ++n) expect = std::min(expect, 2 * n + ((m + (1 << n) - 1) >> n));
    EXPECT_EQ(d[at(b, power('a', m))], expect) << m;
  }
  for (int k : {2, 3, 4}) EXPECT_NEAR(d[at(b, power('a', 1 << k))], 2 * k, 2);
}

TEST(Cusp, SameInsideTheFreeGroup) {
  GroupBall b = cayley_ball(GroupSpec::free(2), 5);
  CuspedGraph cu = cusp_space(b, peripheral_structure(b, {"a"}), 16);
  auto d = dist_from(*cu.graph, 0);
  EXPECT_EQ(d[at(b, "aaaa")], 4);
  EXPECT_EQ(d[at(b, "aaaaa")], 5);
  EXPECT_EQ(d[at(b, "bbbbb")], 5);
}

TEST(Cusp, DepthZeroReproducesTheBall) {
  GroupBall b = cayley_ball(z2_free_product(), 3);
  CuspedGraph cu = cusp_space(b, peripheral_structure(b, {"xy"}), 0);
  EXPECT_TRUE(cu.horoballs.empty());
  EXPECT_EQ(kernels::all_pairs(*cu.graph), kernels::all_pairs(*b.graph));
}

TEST(Cusp, DepthCapIsLossless) {
  GroupBall b = cayley_ball(z2_free_product(), 4);
  PeripheralStructure ps = peripheral_structure(b, {"xy"});
  CuspedGraph capped = cusp_space(b, ps, 16);
  for (const Horoball& hb : capped.horoballs) EXPECT_LE(hb.depth, 4);
  // a deeper cap adds nothing
  CuspedGraph deeper = cusp_space(b, ps, 30);
  EXPECT_EQ(deeper.graph->vertex_count(), capped.graph->vertex_count());
  // a shallower one lengthens paths between far points of a wide coset
  GroupBall line = cayley_ball(GroupSpec::free(1), 16);
  PeripheralStructure lps = peripheral_structure(line, {"a"});
  auto dc = dist_from(*cusp_space(line, lps, 16).graph, at(line, power('A', 16)));
  auto ds = dist_from(*cusp_space(line, lps, 1).graph, at(line, power('A', 16)));
  EXPECT_EQ(dc[at(line, power('a', 16))], 10);
  EXPECT_EQ(ds[at(line, power('a', 16))], 18);
}

TEST(Cusp, ComparisonMapsAreLipschitz) {
  for (const auto& [spec, per, r] : {std::tuple{GroupSpec::free(2), std::string("a"), 3},
                                     std::tuple{z2_free_product(), std::string("xy"), 2}}) {
    GroupBall b = cayley_ball(spec, r);
    PeripheralStructure ps = peripheral_structure(b, {per});
    ConedGraph cone = cone_off(b, ps);
    CuspedGraph cu = cusp_space(b, ps, 16);
    const std::size_t nb = b.graph->vertex_count(), nc = cu.graph->vertex_count();
    auto dcu = kernels::all_pairs(*cu.graph);
    auto dco = kernels::all_pairs(*cone.graph);
    auto dba = kernels::all_pairs(*b.graph);
    for (std::size_t u = 0; u < nc; ++u)
      for (std::size_t v = u + 1; v < nc; ++v)
        ASSERT_LE(dco[cu.to_cone(u) * nb + cu.to_cone(v)], dcu[u * nc + v]);
    for (std::size_t u = 0; u < nb; ++u)
      for (std::size_t v = u + 1; v < nb; ++v) {
        ASSERT_LE(dco[u * nb + v], dcu[u * nc + v]);
        ASSERT_LE(dcu[u * nc + v], dba[u * nb + v]);
      }
  }
}

TEST(Cusp, HyperbolizesTheFlatFactor) {
  // the identity coset carries the fat Z^2 triangles; seed the sampler with it
  for (int r : {4, 5}) {
    GroupBall b = cayley_ball(z2_free_product(), r);
    PeripheralStructure ps = peripheral_structure(b, {"xy"});
    CuspedGraph cu = cusp_space(b, ps, 16);
    const int c0 = ps.coset_of[0][0];
    DeltaOptions base;
    base.seed_vertices = ps.cosets[c0].members;
    DeltaOptions cusped = base;
    for (const Horoball& hb : cu.horoballs)
      if (hb.coset == c0)
        for (int l = 1; l <= hb.depth; ++l)
          for (std::size_t i = 0; i < hb.width; ++i) cusped.seed_vertices.push_back(hb.vertex(i, l));
    EXPECT_EQ(delta_fourpoint(*b.graph, base).delta, 4.0);  // the l1 ball of radius 4 or 5
    EXPECT_LE(delta_fourpoint(*cu.graph, cusped).delta, 2.0);
  }
}

// ---------------------------------------------------------------- projections

TEST(AlmostProjection, Examples) {
  GroupBall b = cayley_ball(GroupSpec::free(2), 6);
  PeripheralStructure ps = peripheral_structure(b, {"a"});
  const int p = ps.coset_of[0][0];
  ProjectionSet s = almost_projection(b, ps, p, at(b, "bbb"));
  std::vector<VertexId> expect{0, at(b, "a"), at(b, "A")};
  std::sort(expect.begin(), expect.end());
  EXPECT_EQ(s.vertices, expect);
  EXPECT_EQ(s.diameter, 2);

  ProjectionSet onp = almost_projection(b, ps, p, at(b, "aa"));
  EXPECT_TRUE(std::binary_search(onp.vertices.begin(), onp.vertices.end(), at(b, "aa")));
  EXPECT_LE(onp.diameter, 2);

  for (std::string x : {"ab", "abab"}) {
    // d((ab)^n, a^k) = |1 - k| + 2n - 1, minimal at k = 1
    ProjectionSet t = almost_projection(b, ps, p, at(b, x));
    std::vector<VertexId> want{0, at(b, "a"), at(b, "aa")};
    std::sort(want.begin(), want.end());
    EXPECT_EQ(t.vertices, want) << x;
    EXPECT_EQ(t.diameter, 2);
  }
  EXPECT_EQ(code_of([&] { almost_projection(b, ps, -1, 0); }), ErrorCode::kCosetOutsideBall);
  EXPECT_EQ(code_of([&] { almost_projection(b, ps, static_cast<int>(ps.cosets.size()), 0); }),
            ErrorCode::kCosetOutsideBall);
}

TEST(AlmostProjection, ContainsNearestPoints) {
  GroupBall b = cayley_ball(z2_free_product(), 3);
  PeripheralStructure ps = peripheral_structure(b, {"xy"});
  for (VertexId x = 0; x < static_cast<VertexId>(b.graph->vertex_count()); x += 7) {
    auto dx = dist_from(*b.graph, x);
    for (int c = 0; c < static_cast<int>(ps.cosets.size()); c += 5) {
      ProjectionSet s = almost_projection(b, ps, c, x);
      ASSERT_FALSE(s.vertices.empty());
      int best = 1 << 20;
      for (VertexId y : ps.cosets[c].members) best = std::min(best, dx[y]);
      for (VertexId y : ps.cosets[c].members)
        if (dx[y] == best) EXPECT_TRUE(std::binary_search(s.vertices.begin(), s.vertices.end(), y));
    }
  }
}

TEST(PeripheralDiam, Examples) {
  for (int r = 4; r <= 7; ++r) {
    GroupBall b = cayley_ball(GroupSpec::free(2), r);
    PeripheralStructure ps = peripheral_structure(b, {"a"});
    const int lim = r - b.margin;
    EXPECT_EQ(peripheral_diam(b, ps, axis_images(b, b.alphabet.parse("b"), lim)).max_diam, 2) << r;
    PeripheralDiamTable own = peripheral_diam(b, ps, axis_images(b, b.alphabet.parse("a"), lim));
    EXPECT_EQ(own.diam[ps.coset_of[0][0]], 2 * lim + 2) << r;
    PeripheralDiamTable trivial = peripheral_diam(b, ps, {0});
    for (int dm : trivial.diam) EXPECT_LE(dm, 2);
  }
}

TEST(PeripheralDiam, EquivariantUnderTranslation) {
  GroupBall b = cayley_ball(GroupSpec::free(2), 7);
  PeripheralStructure ps = peripheral_structure(b, {"a"});
  const Word g = b.alphabet.parse("b");
  std::vector<VertexId> orbit, moved;
  for (std::string w : {"B", "e", "b"}) {
    Word x = b.alphabet.parse(w);
    orbit.push_back(*b.find(x));
    moved.push_back(*b.find(concat(g, x)));
  }
  PeripheralDiamTable t0 = peripheral_diam(b, ps, orbit), t1 = peripheral_diam(b, ps, moved);
  int compared = 0;
  for (std::size_t c = 0; c < ps.cosets.size(); ++c) {
    if (b.length(ps.cosets[c].rep) > 2) continue;
    VertexId image = *b.find(concat(g, b.words[ps.cosets[c].rep]));
    EXPECT_EQ(t1.diam[ps.coset_of[0][image]], t0.diam[c]);
    ++compared;
  }
  EXPECT_GT(compared, 5);
}

// ---------------------------------------------------------------- runner

TEST(CriterionRunner, FreeFactorIsStable) {
  CriterionReport r = criterion_runner(GroupSpec::free(2), {"a"}, {"b"}, {4, 5, 6});
  EXPECT_TRUE(r.stable_in_g);
  EXPECT_TRUE(r.undistorted_cusp);
  EXPECT_TRUE(r.undistorted_cone);
  EXPECT_TRUE(r.consistent);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.recurrence, 0);
    EXPECT_DOUBLE_EQ(row.kappa_cusp, 1.0);
    EXPECT_EQ(row.peripheral_diam, 2);
  }
}

TEST(CriterionRunner, FreeProductFactorIsStable) {
  CriterionReport r = criterion_runner(z2_free_product(), {"xy"}, {"b"}, {3, 4, 5});
  EXPECT_TRUE(r.stable_in_g);
  EXPECT_TRUE(r.undistorted_cusp);
  EXPECT_TRUE(r.undistorted_cone);
}

TEST(CriterionRunner, PeripheralSubgroupItself) {
  // <a> is stable in F2 (tree geodesics have m = 0), yet it is a peripheral, so
  // the cusp and cone orbits are distorted: Z has no linear divergence, and
  // the verdicts disagree
  CriterionReport r = criterion_runner(GroupSpec::free(2), {"a"}, {"a"}, {4, 5, 6, 7});
  EXPECT_TRUE(r.stable_in_g);
  EXPECT_FALSE(r.undistorted_cusp);
  EXPECT_FALSE(r.undistorted_cone);
  EXPECT_FALSE(r.bounded_peripheral);
  EXPECT_FALSE(r.consistent);
}

TEST(CriterionRunner, MarginViolation) {
  EXPECT_EQ(code_of([] { criterion_runner(GroupSpec::free(2), {"a"}, {"abab"}, {2}); }), ErrorCode::kMarginViolation);
}

TEST(Pullback, TreeRecurrenceIsZero) {
  PullbackReport r = pullback(GroupSpec::free(2), {"a"}, {"b"}, {4, 5, 6});
  ASSERT_EQ(r.rows.size(), 3u);
  for (const auto& row : r.rows) {
    EXPECT_LE(row.image_recurrence, 2);
    EXPECT_EQ(row.pulled_recurrence, 0);
    EXPECT_LE(row.pulled_recurrence, row.properness + 1);
  }
}

}  // namespace
}  // namespace stablab
