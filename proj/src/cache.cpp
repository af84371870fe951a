#include "stablab/cache.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "stablab/error.hpp"

namespace stablab {

namespace fs = std::filesystem;

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kIoFailure, "sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

namespace {

constexpr std::string_view kDigestPrefix = "# sha256=";
constexpr std::string_view kExtraPrefix = "# extra ";

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

GraphCache::GraphCache(fs::path root, int version) : root_(std::move(root)), version_(version) {}

fs::path GraphCache::default_root() {
  const char* env = std::getenv("STABLAB_CACHE");
  return env && *env ? fs::path(env) : fs::path(".stablab-cache");
}

std::string GraphCache::key_hash(std::string_view key) const {
  return sha256_hex("stablab-graph/v" + std::to_string(version_) + "\n" + std::string(key));
}

fs::path GraphCache::path_for(std::string_view key) const { return root_ / (key_hash(key) + ".graph"); }

GraphArtifact GraphCache::load(std::string_view key) const {
  GraphArtifact a;
  if (!enabled()) return a;
  fs::path p = path_for(key);
  std::error_code ec;
  if (!fs::exists(p, ec)) return a;
  std::string text = read_file(p);

  // the digest line is the last line and covers every byte before it
  std::size_t end = text.size();
  if (end > 0 && text[end - 1] == '\n') --end;
  std::size_t start = text.rfind('\n', end == 0 ? 0 : end - 1);
  start = start == std::string::npos ? 0 : start + 1;
  std::string_view last(text.data() + start, end - start);
  if (!last.starts_with(kDigestPrefix)) throw Error(ErrorCode::kCacheCorrupt, p.string() + ": no digest line");
  std::string_view body(text.data(), start);
  if (last.substr(kDigestPrefix.size()) != sha256_hex(body)) {
    throw Error(ErrorCode::kCacheCorrupt, p.string() + ": digest mismatch");
  }

  std::string graph_text;
  std::istringstream lines{std::string(body)};
  std::string line;
  while (std::getline(lines, line)) {
    if (line.starts_with(kExtraPrefix)) {
      std::istringstream fields(line.substr(kExtraPrefix.size()));
      std::string name;
      fields >> name;
      auto& vals = a.extras[name];
      std::int64_t x;
      while (fields >> x) vals.push_back(x);
    } else {
      graph_text += line;
      graph_text += '\n';
    }
  }
  try {
    a.graph = std::make_shared<MetricGraph>(deserialize_graph(graph_text));
  } catch (const Error& e) {
    throw Error(ErrorCode::kCacheCorrupt, p.string() + ": " + e.what());
  }
  return a;
}

void GraphCache::store(std::string_view key, const GraphArtifact& a) const {
  if (!enabled()) return;
  std::string body = serialize_graph(*a.graph);
  for (const auto& [name, vals] : a.extras) {
    body += kExtraPrefix;
    body += name;
    for (std::int64_t x : vals) body += " " + std::to_string(x);
    body += '\n';
  }
  std::string text = body + std::string(kDigestPrefix) + sha256_hex(body) + "\n";

  std::error_code ec;
  fs::create_directories(root_, ec);
  static std::atomic<unsigned> counter{0};
  fs::path final_path = path_for(key);
  fs::path tmp = final_path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out.flush()) throw Error(ErrorCode::kIoFailure, "cannot write " + tmp.string());
  }
  fs::rename(tmp, final_path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::kIoFailure, "cannot rename into " + final_path.string());
  }
}

GraphArtifact GraphCache::get_or_build(std::string_view key, const std::function<GraphArtifact()>& build,
                                       bool* hit) const {
  if (hit) *hit = false;
  try {
    GraphArtifact a = load(key);
    if (a.graph) {
      if (hit) *hit = true;
      return a;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kCacheCorrupt) throw;
    std::cerr << "warning: " << e.what() << "; rebuilding\n";
  }
  GraphArtifact a = build();
  store(key, a);
  return a;
}

std::vector<CacheEntry> GraphCache::list() const {
  std::vector<CacheEntry> out;
  std::error_code ec;
  if (!enabled() || !fs::is_directory(root_, ec)) return out;
  for (const auto& de : fs::directory_iterator(root_)) {
    if (de.path().extension() != ".graph") continue;
    CacheEntry e;
    e.sha = de.path().stem().string();
    e.bytes = de.file_size(ec);
    std::ifstream in(de.path());
    std::getline(in, e.header);
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end(), [](const CacheEntry& a, const CacheEntry& b) { return a.sha < b.sha; });
  return out;
}

std::size_t GraphCache::remove(std::string_view sha_prefix) const {
  std::size_t n = 0;
  std::error_code ec;
  for (const CacheEntry& e : list()) {
    if (!e.sha.starts_with(sha_prefix)) continue;
    if (fs::remove(root_ / (e.sha + ".graph"), ec)) ++n;
  }
  return n;
}

}  // namespace stablab
