// stablab run <config> | cache ls|rm [sha-prefix] | report <dir>
#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "stablab/cache.hpp"
#include "stablab/error.hpp"
#include "stablab/experiments.hpp"

using namespace stablab;
namespace fs = std::filesystem;

int main(int argc, char** argv) {
  CLI::App app{"stability and recurrence experiments on Cayley graphs"};
  app.require_subcommand(1);
  app.fallthrough();

  int threads = 0;
  double budget = -1;
  std::string output;
  bool no_cache = false;
  app.add_option("--threads", threads, "worker threads (default: OpenMP default)")->check(CLI::NonNegativeNumber);
  app.add_option("--budget-seconds", budget, "wall-clock budget; overrides [budget] seconds")->check(CLI::PositiveNumber);
  app.add_option("--output", output, "output root; overrides [output] dir");
  app.add_flag("--no-cache", no_cache, "build every graph afresh and store nothing");

  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "run one experiment config");
  run->add_option("config", config_path, "config file")->required();

  std::string action, prefix;
  CLI::App* cache = app.add_subcommand("cache", "inspect the graph cache ($STABLAB_CACHE)");
  cache->add_option("action", action, "ls or rm")->required()->check(CLI::IsMember({"ls", "rm"}));
  cache->add_option("sha", prefix, "rm only entries whose hash starts with this");

  std::string report_dir;
  CLI::App* report = app.add_subcommand("report", "re-emit tables from a stored report.json");
  report->add_option("dir", report_dir, "run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) {
      ExperimentConfig cfg = load_config(config_path);
      RunOptions opts;
      opts.threads = threads;
      opts.budget_seconds = budget;
      if (!no_cache) opts.cache_root = GraphCache::default_root();
      RunReport rep = run_scenario(cfg, opts);
      fs::path dir = emit_tables(rep, output.empty() ? fs::path(cfg.output_dir) : fs::path(output));
      std::printf("%s: %zu rows, cache %d hit / %d built, %.2fs\n", dir.string().c_str(), rep.rows.size(),
                  rep.cache_hits, rep.cache_misses, rep.wall_seconds);
      for (const auto& [name, ok] : rep.verdicts) std::printf("  verdict %s: %s\n", name.c_str(), ok ? "pass" : "FAIL");
      if (!rep.complete) std::printf("  incomplete: %s\n", rep.incomplete_reason.c_str());
      return exit_status(rep);
    }
    if (*cache) {
      GraphCache c(GraphCache::default_root());
      if (action == "ls") {
        for (const CacheEntry& e : c.list()) std::printf("%s %10ju  %s\n", e.sha.c_str(), e.bytes, e.header.c_str());
      } else {
        std::printf("removed %zu entries\n", c.remove(prefix));
      }
      return kExitOk;
    }
    RunReport rep = load_report(report_dir);
    emit_tables_into(rep, output.empty() ? fs::path(report_dir) : fs::path(output));
    return exit_status(rep);
  } catch (const Error& e) {
    std::cerr << "stablab: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::kConfigInvalid: return kExitConfig;
      case ErrorCode::kBudgetExceeded: return kExitBudget;
      default: return kExitCrash;
    }
  } catch (const std::exception& e) {
    std::cerr << "stablab: " << e.what() << "\n";
    return kExitCrash;
  }
}
