#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "stablab/graph.hpp"

namespace stablab {

std::string sha256_hex(std::string_view data);

// Bumped whenever a graph construction changes its output; part of every key.
inline constexpr int kConstructionVersion = 1;

// A cached graph with named integer side tables (e.g. a tiling's central line).
struct GraphArtifact {
  std::shared_ptr<const MetricGraph> graph;
  std::map<std::string, std::vector<std::int64_t>> extras;
};

struct CacheEntry {
  std::string sha;
  std::uintmax_t bytes = 0;
  std::string header;  // first line of the stored graph
};

// Content-addressed store under root: <sha256(key)>.graph holds the
// serialized graph, "# extra" lines, and a closing "# sha256=<digest>" line
// over everything before it. Writes go to a temporary file renamed into
// place, so concurrent processes may share a root.
class GraphCache {
 public:
  // An empty root disables the cache: every lookup builds.
  explicit GraphCache(std::filesystem::path root, int version = kConstructionVersion);

  static std::filesystem::path default_root();  // $STABLAB_CACHE or .stablab-cache

  bool enabled() const { return !root_.empty(); }
  const std::filesystem::path& root() const { return root_; }
  std::string key_hash(std::string_view key) const;
  std::filesystem::path path_for(std::string_view key) const;

  // Throws CacheCorrupt on a missing digest or digest mismatch, IoFailure if
  // the file cannot be read. A miss returns an artifact with a null graph.
  GraphArtifact load(std::string_view key) const;
  void store(std::string_view key, const GraphArtifact& a) const;

  // Loads, or builds and stores. A corrupt entry is reported on stderr and
  // rebuilt. hit is set when the artifact came from disk.
  GraphArtifact get_or_build(std::string_view key, const std::function<GraphArtifact()>& build,
                             bool* hit = nullptr) const;

  std::vector<CacheEntry> list() const;
  std::size_t remove(std::string_view sha_prefix = "") const;  // returns files removed

 private:
  std::filesystem::path root_;
  int version_;
};

}  // namespace stablab
