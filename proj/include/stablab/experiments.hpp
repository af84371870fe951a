#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "stablab/graph.hpp"
#include "stablab/group.hpp"
#include "stablab/ratio.hpp"

namespace stablab {

enum class Scenario { kRecurrence, kStability, kContraction, kProperty5, kPullback, kRelhypCriterion };

std::string_view scenario_name(Scenario s);

// One scenario per file, "key = value" lines under [scenario], [group],
// [params], [budget] and [output]. Grids are comma lists; an empty value is
// an empty grid. peripheral may repeat, one subgroup per line.
struct ExperimentConfig {
  Scenario scenario = Scenario::kRecurrence;
  std::uint64_t seed = 1;

  GroupSpec group;
  bool is_tiling = false;
  std::vector<std::string> peripherals;
  std::vector<std::string> subgroup;  // generators of H as words

  std::vector<Ratio> t{Ratio(1, 3)};
  std::vector<Ratio> c{Ratio(3)};
  std::vector<Ratio> kappa{Ratio(1)};
  std::vector<Ratio> lambda{Ratio(0)};
  std::vector<int> eps{1};
  std::vector<int> radii;
  std::vector<int> lengths;  // empty: the longest path the trusted ball allows
  std::string mode = "auto";  // stability: auto | exact | probe
  int n_max = 16;
  int margin = -1;
  bool delta = false;  // relhyp_criterion: also estimate delta of ball and cusp
  std::size_t max_points = 0;
  int r_max = -1;  // contraction: largest sampled r, -1 for all the trusted ball allows

  std::size_t vertex_cap = 2'000'000;
  double budget_seconds = 0;  // 0: unlimited
  std::string output_dir = "out";

  // Normalized text of everything that determines results (budgets and the
  // output directory excluded), and its hash.
  std::string canonical() const;
  std::string hash() const;  // first 12 hex digits of sha256(canonical)
};

// Throws ConfigInvalid with the offending line.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

struct ProfileRow {
  std::string quantity;
  std::string param_1;  // the swept coordinate
  std::string param_2;  // fixed parameters as key=value;...
  std::string value;
  int witness_id = -1;
};

struct Witness {
  std::string space;
  std::vector<VertexId> vertices;
};

struct RunReport {
  int schema_version = 1;
  std::string scenario;
  std::string config_hash;
  std::string config_text;
  std::vector<ProfileRow> rows;
  std::vector<Witness> witnesses;
  std::map<std::string, bool> verdicts;  // a false entry fails the run
  std::map<std::string, bool> findings;  // measured booleans, informational
  bool complete = true;
  std::string incomplete_reason;
  double budget_seconds = 0;
  double wall_seconds = 0;
  std::size_t vertex_cap = 0;
  std::size_t max_vertices = 0;
  int cache_hits = 0;
  int cache_misses = 0;

  bool verdict_failed() const;
};

struct RunOptions {
  int threads = 0;               // 0: OpenMP default
  double budget_seconds = -1;    // overrides the config when >= 0
  std::filesystem::path cache_root;  // empty: no cache
};

// Throws ConfigInvalid for parameters the estimators reject and
// BudgetExceeded when a graph exceeds the vertex budget. Running out of time
// is not an error: the report is returned with complete = false and holds
// the rows measured so far.
RunReport run_scenario(const ExperimentConfig& cfg, const RunOptions& opts = {});

// Writes profile.csv, witnesses.txt, plot.csv and report.json into
// <out_root>/<scenario>-<hash>/ and returns that directory.
std::filesystem::path emit_tables(const RunReport& report, const std::filesystem::path& out_root);
// Writes the files into dir itself.
void emit_tables_into(const RunReport& report, const std::filesystem::path& dir);
RunReport load_report(const std::filesystem::path& dir);

std::string profile_csv(const RunReport& report);

enum ExitStatus : int { kExitOk = 0, kExitCrash = 1, kExitVerdict = 2, kExitBudget = 3, kExitConfig = 4 };

int exit_status(const RunReport& report);

}  // namespace stablab
