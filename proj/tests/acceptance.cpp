// One PASS/FAIL line per acceptance criterion. Scenario criteria run the
// configs under configs/ through the experiment runner; the rest call the
// library directly. --only N runs a single criterion (10 reruns 1..9).
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "fixtures.hpp"
#include "stablab/error.hpp"
#include "stablab/experiments.hpp"
#include "stablab/metric.hpp"
#include "stablab/stability.hpp"
#include "stablab/tiling.hpp"

using namespace stablab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  std::string csv;
};

struct Context {
  fs::path configs;
  fs::path cache;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

RunReport run(const Context& ctx, const std::string& name) {
  RunOptions opts;
  opts.cache_root = ctx.cache;
  return run_scenario(load_config(ctx.configs / (name + ".conf")), opts);
}

// values of one quantity in row order
std::vector<double> column(const RunReport& r, const std::string& quantity) {
  std::vector<double> v;
  for (const ProfileRow& row : r.rows)
    if (row.quantity == quantity) v.push_back(std::stod(row.value));
  return v;
}

std::string joined(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ",") + fmt("%g", x);
  return s;
}

// ---------------------------------------------------------------- 1

Outcome oracle_equivalence(const Context&) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  o.csv = "quantity,param_1,param_2,value,witness_id\n";
  int graphs = 0, checks = 0, mismatches = 0;
  for (const auto& fx : testing::oracle_fixtures()) {
    if (fx.g.vertex_count() > 60) continue;
    ++graphs;
    for (auto [a, b] : testing::fixture_pairs(fx.g)) {
      PathRec p = shortest_path(fx.g, a, b);
      for (Ratio t : {Ratio(1, 4), Ratio(1, 3)})
        for (Ratio c : {Ratio(1), Ratio(2), Ratio(3)}) {
          int m = recurrence_constant(fx.g, p, t, c).m;
          int oracle = recurrence_oracle(fx.g, p, t, c);
          ++checks;
          if (m != oracle) ++mismatches;
          o.csv += fmt("m_hat,%s,a=%d;b=%d;t=%s;C=%s,%d,-1\n", fx.name.c_str(), a, b, t.str().c_str(), c.str().c_str(), m);
        }
    }
  }
  const double secs = seconds_since(t0);
  o.pass = graphs >= 20 && mismatches == 0 && secs < 120;
  o.detail = fmt("%d graphs, %d checks, %d mismatches, %.1fs (limit 120s)", graphs, checks, mismatches, secs);
  return o;
}

// ---------------------------------------------------------------- 2

Outcome tree_null(const Context& ctx) {
  Outcome o;
  RunReport rec = run(ctx, "tree_recurrence");
  RunReport stab = run(ctx, "tree_stability");
  std::size_t nonzero = 0;
  for (const RunReport* r : {&rec, &stab})
    for (const ProfileRow& row : r->rows)
      if (row.value != "0") ++nonzero;
  const std::size_t expected_rec = 5 * 2 * 3, expected_stab = 5;
  o.pass = rec.complete && stab.complete && rec.rows.size() == expected_rec && stab.rows.size() == expected_stab && nonzero == 0;
  o.detail = fmt("%zu m_hat and %zu D_hat values over R=4..8, %zu nonzero", rec.rows.size(), stab.rows.size(), nonzero);
  o.csv = profile_csv(rec) + profile_csv(stab);
  return o;
}

// ---------------------------------------------------------------- 3

Outcome flat_vs_hyperbolic(const Context& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  RunReport flat = run(ctx, "z2_recurrence");
  RunReport hyp = run(ctx, "tiling_recurrence");
  std::vector<double> f = column(flat, "m_hat"), h = column(hyp, "m_hat");
  const double secs = seconds_since(t0);
  bool ok = f.size() == 5 && h.size() == 7 && f.front() > 0;
  double factor = ok ? f.back() / f.front() : 0;
  double spread = h.empty() ? 99 : *std::max_element(h.begin(), h.end()) - *std::min_element(h.begin(), h.end());
  o.pass = ok && factor >= 2 && spread <= 1 && secs < 600;
  o.detail = fmt("Z^2 m_hat {%s} factor %.2f (>= 2); {4,5} m_hat {%s} spread %g (<= 1); %.1fs", joined(f).c_str(), factor,
                 joined(h).c_str(), spread, secs);
  o.csv = profile_csv(flat) + profile_csv(hyp);
  return o;
}

// ---------------------------------------------------------------- 4

Outcome property5_counterexample(const Context& ctx) {
  Outcome o;
  RunReport r = run(ctx, "tiling_property5");
  std::vector<double> k = column(r, "K_hat"), m = column(r, "m_hat");
  bool strict = k.size() == 3;
  for (std::size_t i = 1; strict && i < k.size(); ++i) strict = k[i] > k[i - 1];
  bool steady = m.size() == 3;
  for (double x : m) steady = steady && std::abs(x - m.front()) <= 1;
  o.pass = strict && steady;
  o.detail = fmt("d=8,12,16: K_hat {%s} strictly increasing: %s; m_hat {%s} within +-1: %s", joined(k).c_str(),
                 strict ? "yes" : "no", joined(m).c_str(), steady ? "yes" : "no");
  o.csv = profile_csv(r);
  return o;
}

// ---------------------------------------------------------------- 5

struct LemmaTally {
  int triples = 0, violations = 0, property_failures = 0;
  std::map<std::string, int> per_space;
  std::string csv;
};

void lemma_triples(const std::string& name, const MetricGraph& g, const PathRec& gamma_path, int per_k, LemmaTally& tally) {
  VertexSet gamma = make_vertex_set(gamma_path.vertices);
  ContractionProfile prof = contraction_profile(g, gamma);
  auto rho = [&](int r) { return prof.envelope_at(r); };
  std::vector<int> dg = dist_from_set(g, gamma);
  for (int k = 1; k <= 3; ++k) {
    std::vector<VertexId> level;
    for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v)
      if (dg[v] == k && g.trusted(v)) level.push_back(v);
    std::vector<char> blocked(g.vertex_count(), 0);
    for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) blocked[v] = dg[v] < k;
    int made = 0;
    for (std::size_t i = 0; i < level.size() && made < per_k; ++i)
      for (std::size_t j = i + 1; j < level.size() && made < per_k; ++j) {
        auto route = shortest_path_masked(g, level[i], level[j], blocked);
        if (!route) continue;
        PathRec h = make_path(g, *route);
        ContractLemmaReport rep = verify_contract_lemma(g, gamma, h, k, rho);
        ++made;
        ++tally.triples;
        ++tally.per_space[name];
        if (!rep.holds) ++tally.violations;
        if (!rep.property1 || !rep.property2) ++tally.property_failures;
        tally.csv += fmt("lemma,%s,K=%d;x=%d;y=%d;len=%d,%.6g,-1\n", name.c_str(), k, level[i], level[j], h.arclength(),
                         rep.lhs - rep.rhs);
      }
  }
}

Outcome contraction_lemma(const Context&) {
  Outcome o;
  LemmaTally tally;
  tally.csv = "quantity,param_1,param_2,value,witness_id\n";
  {
    GroupSpec f2 = GroupSpec::free(2);
    GroupBall b = cayley_ball(f2, 7);
    Alphabet al = f2.alphabet();
    lemma_triples("F2:R=7", *b.graph, shortest_path(*b.graph, *b.find(al.parse("AAAA")), *b.find(al.parse("aaaa"))), 25, tally);
  }
  {
    TilingOptions to;
    to.ball_radius = 7;
    TilingGraph t = tiling_graph(4, 5, 1, to);
    lemma_triples("tiling45:R=7", *t.graph, t.central_segment(8), 25, tally);
  }
  o.pass = tally.triples >= 50 && tally.violations == 0 && tally.property_failures == 0;
  // In a tree two distinct points at distance K from gamma are joined only
  // through their meet point, which is closer than K, so the tree yields none.
  o.detail = fmt("%d triples (>= 50; tree %d, tiling %d), %d inequality violations, %d decomposition property failures",
                 tally.triples, tally.per_space["F2:R=7"], tally.per_space["tiling45:R=7"], tally.violations,
                 tally.property_failures);
  o.csv = tally.csv;
  return o;
}

// ---------------------------------------------------------------- 6

Outcome contraction_dichotomy(const Context& ctx) {
  Outcome o;
  RunReport tree = run(ctx, "contraction_tree");
  RunReport flat = run(ctx, "contraction_z2");
  int tree_max = 0, tree_n = 0, flat_bad = 0, flat_n = 0;
  for (const ProfileRow& row : tree.rows)
    if (row.quantity == "rho_hat") {
      tree_max = std::max(tree_max, std::stoi(row.value));
      ++tree_n;
    }
  for (const ProfileRow& row : flat.rows)
    if (row.quantity == "rho_hat" && std::stoi(row.param_1) >= 3) {
      ++flat_n;
      if (std::stoi(row.value) < std::stoi(row.param_1) - 1) ++flat_bad;
    }
  o.pass = tree_n > 0 && tree_max <= 2 && flat_n > 0 && flat_bad == 0;
  o.detail = fmt("tree: %d radii, max rho_hat %d (<= 2); Z^2 axis: %d radii r >= 3, %d below r-1", tree_n, tree_max, flat_n,
                 flat_bad);
  o.csv = profile_csv(tree) + profile_csv(flat);
  return o;
}

// ---------------------------------------------------------------- 7

Outcome cusp_hyperbolization(const Context& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  RunReport r = run(ctx, "cusp_delta");
  std::vector<double> base = column(r, "delta_base"), cusp = column(r, "delta_cusp");
  const double secs = seconds_since(t0);
  bool monotone = base.size() == 4;
  for (std::size_t i = 1; monotone && i < base.size(); ++i) monotone = base[i] >= base[i - 1];
  monotone = monotone && base.back() > base.front();
  double spread = 1;
  if (cusp.size() == 4) {
    auto [lo, hi] = std::minmax_element(cusp.begin(), cusp.end());
    spread = *hi > 0 ? (*hi - *lo) / *hi : 0;
  }
  o.pass = monotone && spread <= 0.2 && secs < 900;
  o.detail = fmt("R=4..7 cusped delta {%s} spread %.0f%% (<= 20%%); uncusped {%s} increasing: %s; %.1fs", joined(cusp).c_str(),
                 100 * spread, joined(base).c_str(), monotone ? "yes" : "no", secs);
  o.csv = profile_csv(r);
  return o;
}

// ---------------------------------------------------------------- 8

Outcome relhyp_consistency(const Context& ctx) {
  Outcome o;
  struct Case {
    const char* config;
    const char* label;
    bool expected;
  };
  const Case cases[] = {{"relhyp_f2_a_b", "(F2,<a>,<b>)", true},
                        {"relhyp_z2z", "(Z^2*Z,Z^2,<b>)", true},
                        {"relhyp_f2_a_a", "(F2,<a>,<a>)", false}};
  o.pass = true;
  for (const Case& c : cases) {
    RunReport r = run(ctx, c.config);
    const std::string key = "[t=1/3;C=3]";
    bool v1 = r.findings.at("stable_in_g" + key), v2 = r.findings.at("undistorted_cusp" + key),
         v3 = r.findings.at("undistorted_cone" + key) && r.findings.at("bounded_peripheral" + key);
    bool ok = v1 == c.expected && v2 == c.expected && v3 == c.expected;
    o.pass = o.pass && ok;
    o.detail += fmt("%s%s verdicts %d%d%d expected %s", o.detail.empty() ? "" : "; ", c.label, v1, v2, v3,
                    c.expected ? "111" : "000");
    o.csv += profile_csv(r);
  }
  return o;
}

// ---------------------------------------------------------------- 9

Outcome pullback_pipeline(const Context& ctx) {
  Outcome o;
  RunReport r = run(ctx, "pullback_f2");
  std::vector<double> image = column(r, "image_m"), pulled = column(r, "pulled_m");
  bool bounded = image.size() == 4 && *std::max_element(image.begin(), image.end()) <= 2;
  bool zero = pulled.size() == 4 && std::all_of(pulled.begin(), pulled.end(), [](double x) { return x == 0; });
  o.pass = bounded && zero;
  o.detail = fmt("R=4..7 image m {%s} (<= 2), pulled-back m {%s} (== 0)", joined(image).c_str(), joined(pulled).c_str());
  o.csv = profile_csv(r);
  return o;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome(const Context&)> fn;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "oracle equivalence (recurrence)", oracle_equivalence},
      {2, "tree null case", tree_null},
      {3, "flat/hyperbolic separation", flat_vs_hyperbolic},
      {4, "Property-5 counterexample", property5_counterexample},
      {5, "contracting-path lemma verifier", contraction_lemma},
      {6, "contraction dichotomy", contraction_dichotomy},
      {7, "cusped-space hyperbolization", cusp_hyperbolization},
      {8, "relative hyperbolicity criterion consistency", relhyp_consistency},
      {9, "pull-back pipeline", pullback_pipeline},
  };
  return all;
}

void print(int id, const char* title, const Outcome& o) {
  std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  std::string configs = STABLAB_CONFIG_DIR;
  std::string out;
  app.add_option("--only", only, "run one criterion (1-10)")->check(CLI::Range(1, 10));
  app.add_option("--configs", configs, "directory of scenario configs");
  app.add_option("--out", out, "write each criterion's CSV here");
  CLI11_PARSE(app, argc, argv);

  Context ctx;
  ctx.configs = configs;
  ctx.cache = fs::temp_directory_path() / ("stablab-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(ctx.cache);

  if (!out.empty()) fs::create_directories(out);
  bool all_pass = true;
  std::map<int, std::string> first_csv;
  try {
    for (const Criterion& c : criteria()) {
      if (only != 0 && only != 10 && only != c.id) continue;
      Outcome o = c.fn(ctx);
      first_csv[c.id] = o.csv;
      if (only == 10) continue;
      print(c.id, c.title, o);
      all_pass = all_pass && o.pass;
      if (!out.empty()) std::ofstream(fs::path(out) / fmt("criterion_%02d.csv", c.id)) << o.csv;
    }
    if (only == 0 || only == 10) {
      // second pass over 1..9; graphs now come from the cache the first pass filled
      std::vector<int> differ;
      for (const Criterion& c : criteria())
        if (c.fn(ctx).csv != first_csv[c.id]) differ.push_back(c.id);
      Outcome o;
      o.pass = differ.empty();
      o.detail = fmt("criteria 1-9 run twice, %zu CSV outputs differ", differ.size());
      for (int id : differ) o.detail += fmt(" #%d", id);
      print(10, "determinism", o);
      all_pass = all_pass && o.pass;
    }
  } catch (const std::exception& e) {
    std::printf("[FAIL] acceptance aborted: %s\n", e.what());
    all_pass = false;
  }
  std::error_code ec;
  fs::remove_all(ctx.cache, ec);
  return all_pass ? 0 : 1;
}
