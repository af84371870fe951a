#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "stablab/cache.hpp"
#include "stablab/error.hpp"
#include "stablab/experiments.hpp"

namespace stablab {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_list(std::string_view v) {
  std::vector<std::string> out;
  if (trim(v).empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = v.find(',', start);
    out.push_back(trim(v.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <class T>
T parse_number(const std::string& s, int line) {
  T x{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw Error(ErrorCode::kConfigInvalid, "line " + std::to_string(line) + ": not a number: '" + s + "'");
  }
  return x;
}

double parse_double(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    double x = std::stod(s, &used);
    if (used == s.size()) return x;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kConfigInvalid, "line " + std::to_string(line) + ": not a number: '" + s + "'");
}

bool parse_bool(const std::string& s, int line) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw Error(ErrorCode::kConfigInvalid, "line " + std::to_string(line) + ": not a boolean: '" + s + "'");
}

std::vector<Ratio> ratio_list(std::string_view v, int line) {
  std::vector<Ratio> out;
  for (const std::string& x : split_list(v)) {
    try {
      out.push_back(Ratio::parse(x));
    } catch (const Error&) {
      throw Error(ErrorCode::kConfigInvalid, "line " + std::to_string(line) + ": not a ratio: '" + x + "'");
    }
  }
  return out;
}

std::vector<int> int_list(std::string_view v, int line) {
  std::vector<int> out;
  for (const std::string& x : split_list(v)) out.push_back(parse_number<int>(x, line));
  return out;
}

template <class T, class F>
std::string join(const std::vector<T>& xs, F f) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + f(xs[i]);
  return s;
}

constexpr std::pair<Scenario, std::string_view> kScenarios[] = {
    {Scenario::kRecurrence, "recurrence"}, {Scenario::kStability, "stability"},
    {Scenario::kContraction, "contraction"}, {Scenario::kProperty5, "property5"},
    {Scenario::kPullback, "pullback"},     {Scenario::kRelhypCriterion, "relhyp_criterion"},
};

}  // namespace

std::string_view scenario_name(Scenario s) {
  for (const auto& [k, name] : kScenarios)
    if (k == s) return name;
  return "unknown";
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  bool have_scenario = false, have_group = false;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  auto bad = [&](const std::string& msg) {
    return Error(ErrorCode::kConfigInvalid, (lineno ? "line " + std::to_string(lineno) + ": " : std::string()) + msg);
  };

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw bad("unterminated section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      static const std::string_view known[] = {"scenario", "group", "params", "budget", "output"};
      if (std::find(std::begin(known), std::end(known), section) == std::end(known)) throw bad("unknown section [" + section + "]");
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw bad("expected key = value");
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string val = trim(std::string_view(line).substr(eq + 1));
    const std::string where = section + "." + key;

    if (where == "scenario.name") {
      auto it = std::find_if(std::begin(kScenarios), std::end(kScenarios), [&](const auto& p) { return p.second == val; });
      if (it == std::end(kScenarios)) throw bad("unknown scenario '" + val + "'");
      cfg.scenario = it->first;
      have_scenario = true;
    } else if (where == "scenario.seed") {
      cfg.seed = parse_number<std::uint64_t>(val, lineno);
    } else if (where == "group.spec") {
      try {
        cfg.group = GroupSpec::parse(val);
      } catch (const Error& e) {
        throw bad(std::string("unresolvable group spec: ") + e.what());
      }
      cfg.is_tiling = cfg.group.family == Family::kTiling;
      have_group = true;
    } else if (where == "group.peripheral") {
      if (val.empty()) throw bad("empty peripheral");
      cfg.peripherals.push_back(val);
    } else if (where == "group.subgroup") {
      cfg.subgroup = split_list(val);
    } else if (where == "params.t") {
      cfg.t = ratio_list(val, lineno);
    } else if (where == "params.c") {
      cfg.c = ratio_list(val, lineno);
    } else if (where == "params.kappa") {
      cfg.kappa = ratio_list(val, lineno);
    } else if (where == "params.lambda") {
      cfg.lambda = ratio_list(val, lineno);
    } else if (where == "params.eps") {
      cfg.eps = int_list(val, lineno);
    } else if (where == "params.radii") {
      cfg.radii = int_list(val, lineno);
    } else if (where == "params.lengths") {
      cfg.lengths = int_list(val, lineno);
    } else if (where == "params.mode") {
      if (val != "auto" && val != "exact" && val != "probe") throw bad("mode is auto, exact or probe");
      cfg.mode = val;
    } else if (where == "params.n_max") {
      cfg.n_max = parse_number<int>(val, lineno);
    } else if (where == "params.margin") {
      cfg.margin = parse_number<int>(val, lineno);
    } else if (where == "params.delta") {
      cfg.delta = parse_bool(val, lineno);
    } else if (where == "params.max_points") {
      cfg.max_points = parse_number<std::size_t>(val, lineno);
    } else if (where == "params.r_max") {
      cfg.r_max = parse_number<int>(val, lineno);
    } else if (where == "budget.vertices") {
      cfg.vertex_cap = parse_number<std::size_t>(val, lineno);
      if (cfg.vertex_cap == 0) throw bad("vertex budget must be positive");
    } else if (where == "budget.seconds") {
      cfg.budget_seconds = parse_double(val, lineno);
      if (!(cfg.budget_seconds > 0)) throw bad("time budget must be positive");
    } else if (where == "output.dir") {
      cfg.output_dir = val;
    } else {
      throw bad("unknown key '" + key + "'" + (section.empty() ? " outside any section" : " in [" + section + "]"));
    }
  }

  lineno = 0;
  if (!have_scenario) throw bad("missing [scenario] name");
  if (!have_group) throw bad("missing [group] spec");
  if (cfg.radii.empty()) throw bad("radii must not be empty");
  for (std::size_t i = 0; i < cfg.radii.size(); ++i) {
    if (cfg.radii[i] < 1) throw bad("radii must be positive");
    if (i && cfg.radii[i] <= cfg.radii[i - 1]) throw bad("radii must be increasing");
  }
  for (std::size_t i = 0; i < cfg.lengths.size(); ++i)
    if (cfg.lengths[i] < 1 || (i && cfg.lengths[i] <= cfg.lengths[i - 1])) throw bad("lengths must be positive and increasing");
  for (int e : cfg.eps)
    if (e < 0) throw bad("eps must be nonnegative");
  if (cfg.n_max < 0) throw bad("n_max must be nonnegative");
  const bool relative = cfg.scenario == Scenario::kPullback || cfg.scenario == Scenario::kRelhypCriterion;
  if (relative) {
    if (cfg.is_tiling) throw bad("relative scenarios need a group with a word oracle");
    if (cfg.peripherals.empty()) throw bad("relative scenarios need at least one peripheral");
    if (cfg.subgroup.empty()) throw bad("relative scenarios need a subgroup");
  }
  Alphabet al = cfg.group.alphabet();
  try {
    for (const std::string& w : cfg.subgroup) {
      if (al.parse(w).empty()) throw bad("subgroup generator '" + w + "' is trivial");
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfigInvalid) throw;
    throw bad(std::string("subgroup: ") + e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string ExperimentConfig::canonical() const {
  auto r = [](const Ratio& x) { return x.str(); };
  auto i = [](int x) { return std::to_string(x); };
  std::ostringstream o;
  o << "[scenario]\nname = " << scenario_name(scenario) << "\nseed = " << seed << "\n";
  o << "[group]\nspec = " << group.canonical() << "\n";
  for (const std::string& p : peripherals) o << "peripheral = " << p << "\n";
  if (!subgroup.empty()) o << "subgroup = " << join(subgroup, [](const std::string& s) { return s; }) << "\n";
  o << "[params]\n";
  o << "t = " << join(t, r) << "\nc = " << join(c, r) << "\nkappa = " << join(kappa, r) << "\nlambda = " << join(lambda, r)
    << "\neps = " << join(eps, i) << "\nradii = " << join(radii, i) << "\nlengths = " << join(lengths, i)
    << "\nmode = " << mode << "\nn_max = " << n_max << "\nmargin = " << margin << "\ndelta = " << (delta ? "true" : "false")
    << "\nmax_points = " << max_points << "\nr_max = " << r_max << "\n";
  return o.str();
}

std::string ExperimentConfig::hash() const { return sha256_hex(canonical()).substr(0, 12); }

}  // namespace stablab
