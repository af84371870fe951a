#include "stablab/experiments.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "stablab/cache.hpp"
#include "stablab/deadline.hpp"
#include "stablab/delta.hpp"
#include "stablab/error.hpp"
#include "stablab/metric.hpp"
#include "stablab/orbit.hpp"
#include "stablab/relhyp.hpp"
#include "stablab/stability.hpp"
#include "stablab/tiling.hpp"

namespace stablab {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string tag(std::initializer_list<std::pair<std::string_view, std::string>> kv) {
  std::string s;
  for (const auto& [k, v] : kv) {
    if (!s.empty()) s += ';';
    s += k;
    s += '=';
    s += v;
  }
  return s;
}

// ---------------------------------------------------------------- build stage

struct Space {
  int radius = 0;
  std::string name;
  std::shared_ptr<const MetricGraph> graph;
  std::optional<GroupBall> ball;
  std::vector<VertexId> central_line;
  std::size_t center_index = 0;
};

struct Builder {
  const ExperimentConfig& cfg;
  GraphCache cache;
  int hits = 0, misses = 0;
  std::size_t max_vertices = 0;

  void count(bool hit, std::size_t n) {
    (hit ? hits : misses)++;
    max_vertices = std::max(max_vertices, n);
    if (n > cfg.vertex_cap) {
      throw Error(ErrorCode::kBallTooLarge,
                  std::to_string(n) + " vertices exceed the budget of " + std::to_string(cfg.vertex_cap));
    }
  }

  GroupBall cayley(const GroupSpec& spec, int radius, int margin) {
    std::string key = "cayley_ball\n" + spec.canonical() + "\nR=" + std::to_string(radius) +
                      "\nmargin=" + std::to_string(margin);
    bool hit = false;
    std::optional<GroupBall> built;
    GraphArtifact a = cache.get_or_build(
        key,
        [&] {
          BallOptions bo;
          bo.vertex_cap = cfg.vertex_cap;
          bo.margin = margin;
          built = cayley_ball(spec, radius, bo);
          return GraphArtifact{built->graph, {}};
        },
        &hit);
    count(hit, a.graph->vertex_count());
    if (built) return std::move(*built);
    return ball_from_graph(spec, a.graph);
  }

  Space space(int radius) {
    Space s;
    s.radius = radius;
    if (!cfg.is_tiling) {
      s.ball = cayley(cfg.group, radius, cfg.margin);
      s.graph = s.ball->graph;
      s.name = "ball:R=" + std::to_string(radius);
      return s;
    }
    std::string key = "tiling_ball\n" + cfg.group.canonical() + "\nR=" + std::to_string(radius);
    bool hit = false;
    GraphArtifact a = cache.get_or_build(
        key,
        [&] {
          TilingOptions to;
          to.ball_radius = radius;
          TilingGraph t = tiling_graph(cfg.group.p, cfg.group.q, 1, to);
          GraphArtifact out{t.graph, {}};
          out.extras["central_line"].assign(t.central_line.begin(), t.central_line.end());
          out.extras["center_index"] = {static_cast<std::int64_t>(t.center_index)};
          return out;
        },
        &hit);
    count(hit, a.graph->vertex_count());
    auto line = a.extras.find("central_line");
    auto center = a.extras.find("center_index");
    if (line == a.extras.end() || center == a.extras.end() || center->second.size() != 1) {
      throw Error(ErrorCode::kCacheCorrupt, "tiling entry lacks its central line");
    }
    s.graph = a.graph;
    s.central_line.assign(line->second.begin(), line->second.end());
    s.center_index = static_cast<std::size_t>(center->second[0]);
    s.name = "tiling:R=" + std::to_string(radius);
    return s;
  }
};

// ---------------------------------------------------------------- paths

Word axis_word(const ExperimentConfig& cfg) {
  Alphabet al = cfg.group.alphabet();
  if (cfg.subgroup.empty()) return Word{1};
  Word h;
  for (const std::string& w : cfg.subgroup) h = concat(h, al.parse(w));
  return h;
}

Word power_of(const GroupBall& b, const Word& h, int k) {
  Word base = k < 0 ? inverse(h) : h, w;
  for (int i = 0; i < std::abs(k); ++i) w = concat(w, base);
  return b.oracle->normal_form(w);
}

// The geodesic from h^-floor(n/2) to h^ceil(n/2) in a Cayley ball, or the
// central segment of length n in a tiling. n < 0 asks for the longest one
// with trusted endpoints.
PathRec make_test_path(const ExperimentConfig& cfg, const Space& s, int n) {
  const MetricGraph& g = *s.graph;
  if (s.ball) {
    const GroupBall& b = *s.ball;
    const Word h = axis_word(cfg);
    const int trusted = b.radius - b.margin;
    auto endpoint = [&](int k) -> std::optional<VertexId> {
      Word w = power_of(b, h, k);
      if (static_cast<int>(w.size()) > trusted) return std::nullopt;
      return b.find(w);
    };
    if (n < 0) {
      int k = 0;
      while (endpoint(-(k + 1)) && endpoint(k + 1)) ++k;
      n = 2 * k;
    }
    auto a = endpoint(-(n / 2)), c = endpoint(n - n / 2);
    if (!a || !c) {
      throw Error(ErrorCode::kMarginViolation, "axis segment of " + std::to_string(n) + " steps leaves the trusted part of " + s.name);
    }
    return shortest_path(g, *a, *c);
  }
  auto segment = [&](int len) -> std::optional<PathRec> {
    long lo = static_cast<long>(s.center_index) - len / 2;
    long hi = lo + len;
    if (lo < 0 || hi >= static_cast<long>(s.central_line.size())) return std::nullopt;
    if (!g.trusted(s.central_line[lo]) || !g.trusted(s.central_line[hi])) return std::nullopt;
    return make_path(g, std::vector<VertexId>(s.central_line.begin() + lo, s.central_line.begin() + hi + 1));
  };
  if (n < 0) {
    for (int len = 2 * s.radius; len >= 0; len -= 2)
      if (auto p = segment(len)) return *p;
  } else if (auto p = segment(n)) {
    return *p;
  }
  throw Error(ErrorCode::kMarginViolation, "central segment of length " + std::to_string(n) + " does not fit in " + s.name);
}

// ---------------------------------------------------------------- measure stage

struct UnitOut {
  std::vector<ProfileRow> rows;
  std::vector<Witness> witnesses;  // rows index these locally
  std::map<std::string, bool> findings;
  bool skipped = false;
  bool incomplete = false;
  std::exception_ptr error;

  int witness(std::string space, std::vector<VertexId> v) {
    witnesses.push_back({std::move(space), std::move(v)});
    return static_cast<int>(witnesses.size()) - 1;
  }
};

void measure_path(const ExperimentConfig& cfg, const Space& s, const PathRec& p, const Deadline& deadline, UnitOut& out) {
  const MetricGraph& g = *s.graph;
  const std::string d = std::to_string(p.endpoint_dist);
  const std::string R = std::to_string(s.radius);

  auto recurrence_rows = [&] {
    if (cfg.c.empty()) return;
    std::vector<Ratio> cs = cfg.c;
    std::sort(cs.begin(), cs.end());
    for (const Ratio& t : cfg.t) {
      RecurrenceProfile prof = recurrence_profile(g, p, t, cs);
      for (const RecurrenceSample& smp : prof.samples) {
        out.rows.push_back({"m_hat", d, tag({{"R", R}, {"t", t.str()}, {"C", smp.c.str()}}),
                            std::to_string(smp.result.m), out.witness(s.name, smp.result.witness)});
      }
    }
  };

  switch (cfg.scenario) {
    case Scenario::kRecurrence:
      recurrence_rows();
      break;
    case Scenario::kProperty5:
      for (const Ratio& c : cfg.c) {
        Property5Result k = property5_constant(g, p, c);
        out.rows.push_back({"K_hat", d, tag({{"R", R}, {"C", c.str()}}), std::to_string(k.k), out.witness(s.name, k.witness)});
      }
      recurrence_rows();
      break;
    case Scenario::kStability: {
      StabilityOptions so;
      so.deadline = deadline;
      const bool exact = cfg.mode == "exact" || (cfg.mode == "auto" && g.vertex_count() <= 60);
      so.mode = exact ? StabilityMode::kExact : StabilityMode::kProbe;
      for (const Ratio& kappa : cfg.kappa)
        for (const Ratio& lambda : cfg.lambda) {
          QgParams q;
          try {
            q = QgParams(kappa, lambda);
          } catch (const Error& e) {
            throw Error(ErrorCode::kConfigInvalid, e.what());
          }
          StabilityResult r = stability_constant(g, p, q, so);
          if (!r.complete) out.incomplete = true;
          out.rows.push_back({"D_hat", d,
                              tag({{"R", R}, {"kappa", kappa.str()}, {"lambda", lambda.str()}, {"mode", exact ? "exact" : "probe"}}),
                              std::to_string(r.d), out.witness(s.name, r.witness)});
        }
      break;
    }
    case Scenario::kContraction: {
      VertexSet y = make_vertex_set(p.vertices);
      for (int eps : cfg.eps) {
        ContractionOptions co;
        co.eps = eps;
        co.max_points = cfg.max_points;
        co.r_max = cfg.r_max;
        ContractionProfile prof = contraction_profile(g, y, co);
        const std::string fixed = tag({{"R", R}, {"d", d}, {"eps", std::to_string(eps)}});
        for (std::size_t i = 0; i < prof.samples.size(); ++i) {
          const ContractionSample& smp = prof.samples[i];
          const std::string r = std::to_string(smp.r);
          std::vector<VertexId> pair;
          if (smp.x >= 0) pair = {smp.x, smp.x2};
          out.rows.push_back({"rho_hat", r, fixed, std::to_string(smp.rho), out.witness(s.name, pair)});
          out.rows.push_back({"rho_bar", r, fixed, num(prof.envelope[i]), -1});
        }
        out.findings["sublinear[" + fixed + "]"] = prof.sublinear;
      }
      break;
    }
    default:
      break;
  }
}

bool grows(const std::vector<double>& v) {
  if (v.size() < 2) return false;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] < v[i - 1]) return false;
  return v.back() > v.front();
}

double relative_spread(const std::vector<double>& v) {
  if (v.empty()) return 0;
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi > 0 ? (*hi - *lo) / *hi : 0.0;
}

void run_relative(const ExperimentConfig& cfg, Builder& builder, const Deadline& deadline, RunReport& rep) {
  CriterionOptions base;
  base.n_max = cfg.n_max;
  base.margin = cfg.margin;
  base.ball_source = [&](const GroupSpec& spec, int radius, const BallOptions& bo) {
    return builder.cayley(spec, radius, bo.margin);
  };
  auto add_witness = [&](std::string space, std::vector<VertexId> v) {
    rep.witnesses.push_back({std::move(space), std::move(v)});
    return static_cast<int>(rep.witnesses.size()) - 1;
  };

  for (const Ratio& t : cfg.t)
    for (const Ratio& c : cfg.c) {
      if (deadline.expired()) {
        rep.complete = false;
        rep.incomplete_reason = "time budget exhausted before t=" + t.str() + " C=" + c.str();
        return;
      }
      CriterionOptions opts = base;
      opts.t = t;
      opts.c = c;
      const std::string fixed = tag({{"t", t.str()}, {"C", c.str()}});
      if (cfg.scenario == Scenario::kRelhypCriterion) {
        CriterionReport cr = criterion_runner(cfg.group, cfg.peripherals, cfg.subgroup, cfg.radii, opts);
        for (const CriterionRow& row : cr.rows) {
          const std::string R = std::to_string(row.radius);
          rep.rows.push_back({"recurrence", R, fixed, std::to_string(row.recurrence), -1});
          rep.rows.push_back({"kappa_cusp", R, fixed, num(row.kappa_cusp), -1});
          rep.rows.push_back({"kappa_cone", R, fixed, num(row.kappa_cone), -1});
          rep.rows.push_back({"peripheral_diam", R, fixed, std::to_string(row.peripheral_diam), -1});
          rep.rows.push_back({"ball_vertices", R, fixed, std::to_string(row.ball_vertices), -1});
          rep.rows.push_back({"cusp_vertices", R, fixed, std::to_string(row.cusp_vertices), -1});
        }
        rep.findings["stable_in_g[" + fixed + "]"] = cr.stable_in_g;
        rep.findings["undistorted_cusp[" + fixed + "]"] = cr.undistorted_cusp;
        rep.findings["undistorted_cone[" + fixed + "]"] = cr.undistorted_cone;
        rep.findings["bounded_peripheral[" + fixed + "]"] = cr.bounded_peripheral;
        rep.verdicts["consistent[" + fixed + "]"] = cr.consistent;
      } else {
        PullbackReport pr = pullback(cfg.group, cfg.peripherals, cfg.subgroup, cfg.radii, opts);
        std::vector<double> image, pulled;
        for (const PullbackRow& row : pr.rows) {
          const std::string R = std::to_string(row.radius);
          rep.rows.push_back({"image_m", R, fixed, std::to_string(row.image_recurrence), -1});
          rep.rows.push_back({"image_C", R, fixed, row.image_c.str(), -1});
          rep.rows.push_back({"properness", R, fixed, std::to_string(row.properness), -1});
          rep.rows.push_back({"pulled_m", R, fixed, std::to_string(row.pulled_recurrence), -1});
          image.push_back(row.image_recurrence);
          pulled.push_back(row.pulled_recurrence);
        }
        const bool bounded_image = stabilizes(image), bounded_pulled = stabilizes(pulled);
        rep.findings["bounded_image[" + fixed + "]"] = bounded_image;
        rep.findings["bounded_pulled[" + fixed + "]"] = bounded_pulled;
        rep.verdicts["pullback[" + fixed + "]"] = !bounded_image || bounded_pulled;
      }
    }

  if (cfg.scenario != Scenario::kRelhypCriterion || !cfg.delta) return;
  std::vector<double> base_d, cusp_d;
  for (int radius : cfg.radii) {
    if (deadline.expired()) {
      rep.complete = false;
      rep.incomplete_reason = "time budget exhausted before delta at R=" + std::to_string(radius);
      return;
    }
    GroupBall ball = builder.cayley(cfg.group, radius, cfg.margin);
    PeripheralStructure ps = peripheral_structure(ball, cfg.peripherals);
    CuspedGraph cusp = cusp_space(ball, ps, cfg.n_max);
    // the flat peripheral through the identity carries the widest triangles;
    // seed the sampler with it so the estimate does not depend on luck
    const int c0 = ps.coset_of[0][0];
    DeltaOptions plain;
    plain.seed = cfg.seed;
    plain.seed_vertices = ps.cosets[c0].members;
    DeltaOptions cusped = plain;
    for (const Horoball& hb : cusp.horoballs)
      if (hb.coset == c0)
        for (int l = 1; l <= hb.depth; ++l)
          for (std::size_t i = 0; i < hb.width; ++i) cusped.seed_vertices.push_back(hb.vertex(i, l));
    DeltaEstimate db = delta_fourpoint(*ball.graph, plain);
    DeltaEstimate dc = delta_fourpoint(*cusp.graph, cusped);
    const std::string R = std::to_string(radius);
    rep.rows.push_back({"delta_base", R, "seed=" + std::to_string(cfg.seed), num(db.delta),
                        add_witness("ball:R=" + R, {db.witness.begin(), db.witness.end()})});
    rep.rows.push_back({"delta_cusp", R, "seed=" + std::to_string(cfg.seed), num(dc.delta),
                        add_witness("cusp:R=" + R, {dc.witness.begin(), dc.witness.end()})});
    base_d.push_back(db.delta);
    cusp_d.push_back(dc.delta);
  }
  rep.findings["delta_base_grows"] = grows(base_d);
  rep.findings["delta_cusp_within_20pct"] = relative_spread(cusp_d) <= 0.2;
}

bool config_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::kMarginViolation:
    case ErrorCode::kBadT:
    case ErrorCode::kInvalidParameter:
    case ErrorCode::kTooLarge:
    case ErrorCode::kPeripheralNotSubgenerated:
    case ErrorCode::kUnsupported:
    case ErrorCode::kNotHyperbolicType:
    case ErrorCode::kNotSmallCancellation:
    case ErrorCode::kImageEscapesBall:
    case ErrorCode::kConfigInvalid:
      return true;
    default:
      return false;
  }
}

}  // namespace

bool RunReport::verdict_failed() const {
  return std::any_of(verdicts.begin(), verdicts.end(), [](const auto& kv) { return !kv.second; });
}

int exit_status(const RunReport& r) {
  if (!r.complete) return kExitBudget;
  if (r.verdict_failed()) return kExitVerdict;
  return kExitOk;
}

RunReport run_scenario(const ExperimentConfig& cfg, const RunOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  if (opts.threads > 0) omp_set_num_threads(opts.threads);
  const double seconds = opts.budget_seconds >= 0 ? opts.budget_seconds : cfg.budget_seconds;
  const Deadline deadline = seconds > 0 ? Deadline::after_seconds(seconds) : Deadline();

  RunReport rep;
  rep.scenario = std::string(scenario_name(cfg.scenario));
  rep.config_hash = cfg.hash();
  rep.config_text = cfg.canonical();
  rep.budget_seconds = seconds;
  rep.vertex_cap = cfg.vertex_cap;

  Builder builder{cfg, GraphCache(opts.cache_root)};
  auto finish = [&] {
    rep.cache_hits = builder.hits;
    rep.cache_misses = builder.misses;
    rep.max_vertices = builder.max_vertices;
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  try {
    if (cfg.scenario == Scenario::kPullback || cfg.scenario == Scenario::kRelhypCriterion) {
      run_relative(cfg, builder, deadline, rep);
      finish();
      return rep;
    }

    // build: one space per radius, serially (shares the cache)
    std::vector<Space> spaces;
    for (int radius : cfg.radii) {
      deadline.check("building R=" + std::to_string(radius));
      spaces.push_back(builder.space(radius));
    }
    struct Unit {
      std::size_t space;
      PathRec path;
    };
    std::vector<Unit> units;
    for (std::size_t i = 0; i < spaces.size(); ++i) {
      if (cfg.lengths.empty()) {
        units.push_back({i, make_test_path(cfg, spaces[i], -1)});
      } else {
        for (int n : cfg.lengths) units.push_back({i, make_test_path(cfg, spaces[i], n)});
      }
    }

    // measure: independent units in parallel, each writing only its own slot
    std::vector<UnitOut> outs(units.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t u = 0; u < units.size(); ++u) {
      if (deadline.expired()) {
        outs[u].skipped = true;
        continue;
      }
      try {
        measure_path(cfg, spaces[units[u].space], units[u].path, deadline, outs[u]);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kBudgetExceeded) {
          outs[u].skipped = true;
        } else {
          outs[u].error = std::current_exception();
        }
      } catch (...) {
        outs[u].error = std::current_exception();
      }
    }

    // report: collect in unit order
    for (std::size_t u = 0; u < outs.size(); ++u) {
      UnitOut& o = outs[u];
      if (o.error) std::rethrow_exception(o.error);
      if (o.skipped || o.incomplete) {
        rep.complete = false;
        if (rep.incomplete_reason.empty()) {
          rep.incomplete_reason = "time budget exhausted at R=" + std::to_string(spaces[units[u].space].radius) +
                                  " d=" + std::to_string(units[u].path.endpoint_dist);
        }
      }
      const int offset = static_cast<int>(rep.witnesses.size());
      for (Witness& w : o.witnesses) rep.witnesses.push_back(std::move(w));
      for (ProfileRow& r : o.rows) {
        if (r.witness_id >= 0) r.witness_id += offset;
        rep.rows.push_back(std::move(r));
      }
      for (const auto& [k, v] : o.findings) rep.findings[k] = v;
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kBudgetExceeded) {
      rep.complete = false;
      rep.incomplete_reason = e.what();
    } else if (e.code() == ErrorCode::kBallTooLarge) {
      throw Error(ErrorCode::kBudgetExceeded, e.what());
    } else if (config_error(e.code()) && e.code() != ErrorCode::kConfigInvalid) {
      throw Error(ErrorCode::kConfigInvalid, e.what());
    } else {
      throw;
    }
  }
  finish();
  return rep;
}

// ---------------------------------------------------------------- emit

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

void write_file(const fs::path& p, const std::string& text) {
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out.flush()) throw Error(ErrorCode::kIoFailure, "cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, p, ec);
  if (ec) throw Error(ErrorCode::kIoFailure, "cannot write " + p.string());
}

json to_json(const RunReport& r) {
  json j;
  j["schema_version"] = r.schema_version;
  j["scenario"] = r.scenario;
  j["config_hash"] = r.config_hash;
  j["config"] = r.config_text;
  j["columns"] = {"quantity", "param_1", "param_2", "value", "witness_id"};
  json rows = json::array();
  for (const ProfileRow& row : r.rows) rows.push_back({row.quantity, row.param_1, row.param_2, row.value, row.witness_id});
  j["rows"] = rows;
  json wit = json::array();
  for (const Witness& w : r.witnesses) wit.push_back({{"space", w.space}, {"vertices", w.vertices}});
  j["witnesses"] = wit;
  j["verdicts"] = r.verdicts;
  j["findings"] = r.findings;
  j["complete"] = r.complete;
  j["incomplete_reason"] = r.incomplete_reason;
  j["budget"] = {{"seconds", r.budget_seconds},
                 {"wall_seconds", r.wall_seconds},
                 {"vertex_cap", r.vertex_cap},
                 {"max_vertices", r.max_vertices},
                 {"cache_hits", r.cache_hits},
                 {"cache_misses", r.cache_misses}};
  return j;
}

}  // namespace

std::string profile_csv(const RunReport& r) {
  std::string s = "quantity,param_1,param_2,value,witness_id\n";
  for (const ProfileRow& row : r.rows) {
    s += csv_field(row.quantity) + "," + csv_field(row.param_1) + "," + csv_field(row.param_2) + "," +
         csv_field(row.value) + "," + std::to_string(row.witness_id) + "\n";
  }
  if (r.rows.empty()) s += "# rows=0\n";
  return s;
}

void emit_tables_into(const RunReport& r, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw Error(ErrorCode::kIoFailure, "cannot create " + dir.string());

  write_file(dir / "profile.csv", profile_csv(r));

  std::string plot = "quantity,x,y,series\n";
  for (const ProfileRow& row : r.rows)
    plot += csv_field(row.quantity) + "," + csv_field(row.param_1) + "," + csv_field(row.value) + "," + csv_field(row.param_2) + "\n";
  if (r.rows.empty()) plot += "# rows=0\n";
  write_file(dir / "plot.csv", plot);

  std::string wit = "# witness_id space vertices...\n";
  for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
    wit += std::to_string(i) + " " + r.witnesses[i].space;
    for (VertexId v : r.witnesses[i].vertices) wit += " " + std::to_string(v);
    wit += "\n";
  }
  write_file(dir / "witnesses.txt", wit);
  write_file(dir / "report.json", to_json(r).dump(2) + "\n");
}

fs::path emit_tables(const RunReport& r, const fs::path& out_root) {
  fs::path dir = out_root / (r.scenario + "-" + r.config_hash);
  emit_tables_into(r, dir);
  return dir;
}

RunReport load_report(const fs::path& dir) {
  std::ifstream in(dir / "report.json");
  if (!in) throw Error(ErrorCode::kIoFailure, "no report.json in " + dir.string());
  RunReport r;
  try {
    json j = json::parse(in);
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != 1) throw Error(ErrorCode::kIoFailure, "unsupported report schema " + std::to_string(r.schema_version));
    r.scenario = j.at("scenario").get<std::string>();
    r.config_hash = j.at("config_hash").get<std::string>();
    r.config_text = j.at("config").get<std::string>();
    for (const json& row : j.at("rows")) {
      r.rows.push_back({row.at(0).get<std::string>(), row.at(1).get<std::string>(), row.at(2).get<std::string>(),
                        row.at(3).get<std::string>(), row.at(4).get<int>()});
    }
    for (const json& w : j.at("witnesses"))
      r.witnesses.push_back({w.at("space").get<std::string>(), w.at("vertices").get<std::vector<VertexId>>()});
    r.verdicts = j.at("verdicts").get<std::map<std::string, bool>>();
    r.findings = j.at("findings").get<std::map<std::string, bool>>();
    r.complete = j.at("complete").get<bool>();
    r.incomplete_reason = j.at("incomplete_reason").get<std::string>();
    const json& b = j.at("budget");
    r.budget_seconds = b.at("seconds").get<double>();
    r.wall_seconds = b.at("wall_seconds").get<double>();
    r.vertex_cap = b.at("vertex_cap").get<std::size_t>();
    r.max_vertices = b.at("max_vertices").get<std::size_t>();
    r.cache_hits = b.at("cache_hits").get<int>();
    r.cache_misses = b.at("cache_misses").get<int>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIoFailure, std::string("malformed report.json: ") + e.what());
  }
  return r;
}

}  // namespace stablab
