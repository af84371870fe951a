#include "stablab/group.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "stablab/error.hpp"

namespace stablab {

namespace {

std::string default_symbols(int k) {
  static const std::string kPool = "abcdfghijklmnopqrstuvwxyz";
  if (k < 0 || k > static_cast<int>(kPool.size())) {
    throw Error(ErrorCode::kInvalidParameter, "unsupported rank " + std::to_string(k));
  }
  return kPool.substr(0, k);
}

int parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kConfigInvalid, "expected integer, got '" + std::string(s) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

// Splits on sep at bracket depth zero.
std::vector<std::string_view> split_top(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

// ---------------------------------------------------------------- oracles

class FreeOracle final : public WordOracle {
 public:
  explicit FreeOracle(std::size_t k) : k_(k) {}
  std::size_t rank() const override { return k_; }
  Word normal_form(const Word& w) const override { return free_reduce(w); }

 private:
  std::size_t k_;
};

class FreeAbelianOracle final : public WordOracle {
 public:
  explicit FreeAbelianOracle(std::size_t k) : k_(k) {}
  std::size_t rank() const override { return k_; }
  Word normal_form(const Word& w) const override {
    std::vector<int> e(k_, 0);
    for (Letter l : w) e[generator_of(l)] += l > 0 ? 1 : -1;
    Word out;
    for (std::size_t i = 0; i < k_; ++i) {
      Letter l = static_cast<Letter>(i) + 1;
      for (int j = 0; j < std::abs(e[i]); ++j) out.push_back(e[i] > 0 ? l : -l);
    }
    return out;
  }

 private:
  std::size_t k_;
};

class FreeProductOracle final : public WordOracle {
 public:
  FreeProductOracle(std::shared_ptr<const WordOracle> a, std::shared_ptr<const WordOracle> b)
      : a_(std::move(a)), b_(std::move(b)), ka_(static_cast<int>(a_->rank())) {}
  std::size_t rank() const override { return a_->rank() + b_->rank(); }
  bool letters_decide_membership() const override {
    return a_->letters_decide_membership() && b_->letters_decide_membership();
  }

  Word normal_form(const Word& w) const override {
    struct Syllable {
      bool right;
      Word word;  // in the factor's own letters
    };
    std::vector<Syllable> stack;
    for (Letter l : w) {
      bool right = generator_of(l) >= ka_;
      Letter local = right ? (l > 0 ? l - ka_ : l + ka_) : l;
      if (!stack.empty() && stack.back().right == right) {
        Word merged = stack.back().word;
        merged.push_back(local);
        merged = (right ? b_ : a_)->normal_form(merged);
        if (merged.empty()) {
          stack.pop_back();
        } else {
          stack.back().word = std::move(merged);
        }
      } else {
        Word single = (right ? b_ : a_)->normal_form(Word{local});
        if (!single.empty()) stack.push_back({right, std::move(single)});
      }
    }
    Word out;
    for (const auto& s : stack) {
      for (Letter l : s.word) out.push_back(s.right ? (l > 0 ? l + ka_ : l - ka_) : l);
    }
    return out;
  }

 private:
  std::shared_ptr<const WordOracle> a_, b_;
  int ka_;
};

class DirectProductOracle final : public WordOracle {
 public:
  DirectProductOracle(std::shared_ptr<const WordOracle> a, std::shared_ptr<const WordOracle> b)
      : a_(std::move(a)), b_(std::move(b)), ka_(static_cast<int>(a_->rank())) {}
  std::size_t rank() const override { return a_->rank() + b_->rank(); }
  bool letters_decide_membership() const override {
    return a_->letters_decide_membership() && b_->letters_decide_membership();
  }

  Word normal_form(const Word& w) const override {
    Word left, right;
    for (Letter l : w) {
      if (generator_of(l) >= ka_) {
        right.push_back(l > 0 ? l - ka_ : l + ka_);
      } else {
        left.push_back(l);
      }
    }
    Word out = a_->normal_form(left);
    for (Letter l : b_->normal_form(right)) out.push_back(l > 0 ? l + ka_ : l - ka_);
    return out;
  }

 private:
  std::shared_ptr<const WordOracle> a_, b_;
  int ka_;
};

// Equality is decided by Dehn's algorithm; canonical representatives are the
// first-discovered geodesic words of a ball index, because Dehn output alone
// need not be canonical.
class SmallCancellationOracle final : public WordOracle {
 public:
  SmallCancellationOracle(Presentation pres, const OracleOptions& opts) : pres_(std::move(pres)) {
    const std::size_t k = pres_.alphabet().size();
    balanced_ = true;
    for (const Word& r : pres_.relators()) {
      if (abelian_key(r) != std::vector<int>(k, 0)) balanced_ = false;
    }
    add(Word{});
    std::size_t sphere_lo = 0;
    for (int r = 1; r <= opts.index_radius; ++r) {
      std::size_t sphere_hi = elements_.size();
      for (std::size_t i = sphere_lo; i < sphere_hi; ++i) {
        for (std::size_t g = 0; g < k; ++g) {
          for (int sign : {1, -1}) {
            Word c = elements_[i];
            c.push_back(sign * static_cast<Letter>(g + 1));
            c = free_reduce(c);
            if (static_cast<int>(c.size()) < r) continue;
            if (lookup(c)) continue;
            add(c);
            if (elements_.size() > opts.vertex_cap) {
              throw Error(ErrorCode::kBallTooLarge, "small-cancellation index exceeds vertex cap");
            }
          }
        }
      }
      sphere_lo = sphere_hi;
    }
  }

  std::size_t rank() const override { return pres_.alphabet().size(); }
  bool letters_decide_membership() const override { return false; }

  Word normal_form(const Word& w) const override {
    auto nf = try_normal_form(w);
    if (!nf) throw Error(ErrorCode::kBallTooLarge, "element lies outside the indexed ball");
    return *nf;
  }

  std::optional<Word> try_normal_form(const Word& w) const override {
    auto idx = lookup(free_reduce(w));
    if (!idx) return std::nullopt;
    return elements_[*idx];
  }

 private:
  std::vector<int> abelian_key(const Word& w) const {
    std::vector<int> e(pres_.alphabet().size(), 0);
    for (Letter l : w) e[generator_of(l)] += l > 0 ? 1 : -1;
    return e;
  }

  std::vector<int> key(const Word& w) const { return balanced_ ? abelian_key(w) : std::vector<int>{}; }

  std::optional<std::size_t> lookup(const Word& w) const {
    auto it = buckets_.find(key(w));
    if (it == buckets_.end()) return std::nullopt;
    Word winv = inverse(w);
    for (std::size_t idx : it->second) {
      if (pres_.is_identity(free_reduce(concat(elements_[idx], winv)))) return idx;
    }
    return std::nullopt;
  }

  void add(Word w) {
    buckets_[key(w)].push_back(elements_.size());
    elements_.push_back(std::move(w));
  }

  Presentation pres_;
  bool balanced_ = true;
  std::vector<Word> elements_;
  std::map<std::vector<int>, std::vector<std::size_t>> buckets_;
};

}  // namespace

// ---------------------------------------------------------------- GroupSpec

GroupSpec GroupSpec::free(int k, std::string symbols) {
  if (k < 1) throw Error(ErrorCode::kInvalidParameter, "free group rank must be >= 1");
  GroupSpec s;
  s.family = Family::kFree;
  s.rank = k;
  s.symbols = symbols.empty() ? default_symbols(k) : std::move(symbols);
  if (static_cast<int>(s.symbols.size()) != k) throw Error(ErrorCode::kInvalidParameter, "symbol count != rank");
  Alphabet check(s.symbols);
  return s;
}

GroupSpec GroupSpec::free_abelian(int k, std::string symbols) {
  GroupSpec s = free(k, std::move(symbols));
  s.family = Family::kFreeAbelian;
  return s;
}

static GroupSpec product(Family f, GroupSpec a, GroupSpec b) {
  if (a.family == Family::kTiling || b.family == Family::kTiling) {
    throw Error(ErrorCode::kInvalidParameter, "tilings cannot be factors");
  }
  GroupSpec s;
  s.family = f;
  s.symbols = a.symbols + b.symbols;
  s.rank = static_cast<int>(s.symbols.size());
  Alphabet check(s.symbols);
  s.left = std::make_shared<GroupSpec>(std::move(a));
  s.right = std::make_shared<GroupSpec>(std::move(b));
  return s;
}

GroupSpec GroupSpec::free_product(GroupSpec a, GroupSpec b) {
  return product(Family::kFreeProduct, std::move(a), std::move(b));
}

GroupSpec GroupSpec::direct_product(GroupSpec a, GroupSpec b) {
  return product(Family::kDirectProduct, std::move(a), std::move(b));
}

GroupSpec GroupSpec::small_cancellation(std::string symbols, std::vector<std::string> relators) {
  GroupSpec s;
  s.family = Family::kSmallCancellation;
  s.symbols = std::move(symbols);
  s.rank = static_cast<int>(s.symbols.size());
  s.relators = std::move(relators);
  Alphabet check(s.symbols);
  if (s.relators.empty()) throw Error(ErrorCode::kNotSmallCancellation, "no relators");
  return s;
}

GroupSpec GroupSpec::tiling(int p, int q) {
  if ((p - 2) * (q - 2) <= 4) {
    throw Error(ErrorCode::kNotHyperbolicType, "{" + std::to_string(p) + "," + std::to_string(q) +
                                                   "} is not hyperbolic: need (p-2)(q-2) > 4");
  }
  GroupSpec s;
  s.family = Family::kTiling;
  s.p = p;
  s.q = q;
  return s;
}

GroupSpec GroupSpec::parse(std::string_view text) {
  text = trim(text);
  auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    throw Error(ErrorCode::kConfigInvalid, "bad group spec '" + std::string(text) + "'");
  }
  std::string_view name = trim(text.substr(0, open));
  std::string_view body = text.substr(open + 1, text.size() - open - 2);
  if (name == "free" || name == "free_abelian") {
    auto parts = split_top(body, ';');
    int k = parse_int(parts[0]);
    std::string sym = parts.size() > 1 ? std::string(parts[1]) : "";
    return name == "free" ? free(k, sym) : free_abelian(k, sym);
  }
  if (name == "free_product" || name == "direct_product") {
    auto parts = split_top(body, ',');
    if (parts.size() != 2) throw Error(ErrorCode::kConfigInvalid, "products take two factors");
    GroupSpec a = parse(parts[0]), b = parse(parts[1]);
    return name == "free_product" ? free_product(a, b) : direct_product(a, b);
  }
  if (name == "small_cancellation") {
    auto parts = split_top(body, ';');
    std::vector<std::string> rels(parts.begin() + 1, parts.end());
    return small_cancellation(std::string(parts[0]), rels);
  }
  if (name == "tiling") {
    auto parts = split_top(body, ',');
    if (parts.size() != 2) throw Error(ErrorCode::kConfigInvalid, "tiling(p,q)");
    return tiling(parse_int(parts[0]), parse_int(parts[1]));
  }
  throw Error(ErrorCode::kConfigInvalid, "unknown family '" + std::string(name) + "'");
}

std::string GroupSpec::canonical() const {
  switch (family) {
    case Family::kFree: return "free(" + std::to_string(rank) + ";" + symbols + ")";
    case Family::kFreeAbelian: return "free_abelian(" + std::to_string(rank) + ";" + symbols + ")";
    case Family::kFreeProduct: return "free_product(" + left->canonical() + "," + right->canonical() + ")";
    case Family::kDirectProduct: return "direct_product(" + left->canonical() + "," + right->canonical() + ")";
    case Family::kSmallCancellation: {
      std::string s = "small_cancellation(" + symbols;
      for (const auto& r : relators) s += ";" + r;
      return s + ")";
    }
    case Family::kTiling: return "tiling(" + std::to_string(p) + "," + std::to_string(q) + ")";
  }
  return "";
}

// ---------------------------------------------------------------- Presentation

Presentation::Presentation(Alphabet alphabet, std::vector<Word> relators)
    : alphabet_(std::move(alphabet)) {
  const int k = static_cast<int>(alphabet_.size());
  for (Word& r : relators) {
    r = cyclic_reduce(r);
    if (r.empty()) throw Error(ErrorCode::kNotSmallCancellation, "trivial relator");
    relators_.push_back(r);
    for (const Word& base : {r, inverse(r)}) {
      for (std::size_t s = 0; s < base.size(); ++s) {
        Word rot(base.begin() + s, base.end());
        rot.insert(rot.end(), base.begin(), base.begin() + s);
        if (std::find(sym_.begin(), sym_.end(), rot) == sym_.end()) sym_.push_back(rot);
      }
    }
  }
  for (std::size_t i = 0; i < sym_.size(); ++i) {
    for (std::size_t j = i + 1; j < sym_.size(); ++j) {
      const Word& u = sym_[i];
      const Word& v = sym_[j];
      int piece = 0;
      while (piece < static_cast<int>(std::min(u.size(), v.size())) && u[piece] == v[piece]) ++piece;
      max_piece_ = std::max(max_piece_, piece);
      if (6 * piece >= static_cast<int>(u.size()) || 6 * piece >= static_cast<int>(v.size())) {
        throw Error(ErrorCode::kNotSmallCancellation,
                    "piece " + alphabet_.format(Word(u.begin(), u.begin() + piece)) + " shared by " +
                        alphabet_.format(u) + " and " + alphabet_.format(v) + " is not shorter than 1/6");
      }
    }
  }
  by_first_.assign(2 * k + 1, {});
  for (std::size_t i = 0; i < sym_.size(); ++i) by_first_[sym_[i][0] + k].push_back(static_cast<int>(i));
}

Word Presentation::dehn_reduce(const Word& input) const {
  const int k = static_cast<int>(alphabet_.size());
  Word w = free_reduce(input);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < w.size() && !changed; ++i) {
      for (int idx : by_first_[w[i] + k]) {
        const Word& r = sym_[idx];
        std::size_t len = 0;
        while (len < r.size() && i + len < w.size() && w[i + len] == r[len]) ++len;
        if (2 * len > r.size()) {
          Word rest(r.begin() + len, r.end());
          Word repl = inverse(rest);
          Word next(w.begin(), w.begin() + i);
          next.insert(next.end(), repl.begin(), repl.end());
          next.insert(next.end(), w.begin() + i + len, w.end());
          w = free_reduce(next);
          changed = true;
          break;
        }
      }
    }
  }
  return w;
}

// ---------------------------------------------------------------- factories

std::shared_ptr<const WordOracle> make_oracle(const GroupSpec& spec, const OracleOptions& opts) {
  switch (spec.family) {
    case Family::kFree: return std::make_shared<FreeOracle>(spec.rank);
    case Family::kFreeAbelian: return std::make_shared<FreeAbelianOracle>(spec.rank);
    case Family::kFreeProduct:
      return std::make_shared<FreeProductOracle>(make_oracle(*spec.left, opts), make_oracle(*spec.right, opts));
    case Family::kDirectProduct:
      return std::make_shared<DirectProductOracle>(make_oracle(*spec.left, opts),
                                                   make_oracle(*spec.right, opts));
    case Family::kSmallCancellation: {
      Alphabet alpha = spec.alphabet();
      std::vector<Word> rels;
      for (const auto& r : spec.relators) rels.push_back(alpha.parse(r));
      return std::make_shared<SmallCancellationOracle>(Presentation(alpha, rels), opts);
    }
    case Family::kTiling:
      throw Error(ErrorCode::kUnsupported, "tilings have no word oracle; use tiling_graph");
  }
  return nullptr;
}

std::optional<VertexId> GroupBall::find(const Word& w) const {
  auto nf = oracle->try_normal_form(w);
  if (!nf) return std::nullopt;
  auto it = index.find(*nf);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

GroupBall cayley_ball(const GroupSpec& spec, int radius, const BallOptions& opts) {
  if (radius < 0) throw Error(ErrorCode::kInvalidParameter, "negative radius");
  GroupBall ball;
  ball.spec = spec;
  ball.alphabet = spec.alphabet();
  ball.radius = radius;
  ball.margin = opts.margin >= 0 ? opts.margin : (radius + 3) / 4;
  OracleOptions oo;
  oo.index_radius = radius;
  oo.vertex_cap = opts.vertex_cap;
  ball.oracle = make_oracle(spec, oo);
  const WordOracle& oracle = *ball.oracle;
  const int k = static_cast<int>(oracle.rank());

  ball.words.push_back(Word{});
  ball.index.emplace(Word{}, 0);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < ball.words.size(); ++i) {
    for (int g = 1; g <= k; ++g) {
      for (Letter l : {g, -g}) {
        Word c = ball.words[i];
        c.push_back(l);
        auto nf = oracle.try_normal_form(c);
        if (!nf || static_cast<int>(nf->size()) > radius) continue;
        auto [it, inserted] = ball.index.emplace(*nf, static_cast<VertexId>(ball.words.size()));
        if (inserted) {
          if (oracle.normal_form(*nf) != *nf) {
            throw Error(ErrorCode::kOracleInconsistent, "normal form not idempotent on " + ball.alphabet.format(c));
          }
          ball.words.push_back(*nf);
          if (ball.words.size() > opts.vertex_cap) {
            throw Error(ErrorCode::kBallTooLarge, "ball of radius " + std::to_string(radius) + " exceeds " +
                                                      std::to_string(opts.vertex_cap) + " vertices");
          }
        }
        VertexId j = it->second;
        if (j == static_cast<VertexId>(i)) {
          throw Error(ErrorCode::kOracleInconsistent, "generator acts trivially");
        }
        Word back = ball.words[j];
        back.push_back(-l);
        if (oracle.normal_form(back) != ball.words[i]) {
          throw Error(ErrorCode::kOracleInconsistent, "inverse letter does not undo " + ball.alphabet.format(c));
        }
        if (static_cast<VertexId>(i) < j) edges.emplace_back(static_cast<VertexId>(i), j);
      }
    }
  }
  GraphMeta meta;
  meta.provenance = "cayley_ball " + spec.canonical() + " R=" + std::to_string(radius);
  meta.basepoint = 0;
  meta.radius = radius;
  meta.trusted_radius = radius - ball.margin;
  std::vector<std::string> labels;
  labels.reserve(ball.words.size());
  for (const Word& w : ball.words) labels.push_back(ball.alphabet.format(w));
  if (ball.words.size() == 1) {
    ball.graph = std::make_shared<MetricGraph>(build_graph(1, {}, meta, labels));
  } else {
    ball.graph = std::make_shared<MetricGraph>(build_graph(ball.words.size(), edges, meta, labels));
  }
  return ball;
}

GroupBall ball_from_graph(const GroupSpec& spec, std::shared_ptr<const MetricGraph> graph) {
  const GraphMeta& meta = graph->meta();
  if (!graph->has_labels() || meta.radius < 0 || meta.trusted_radius < 0 || meta.basepoint != 0) {
    throw Error(ErrorCode::kOracleInconsistent, "graph carries no Cayley ball labels");
  }
  GroupBall ball;
  ball.spec = spec;
  ball.alphabet = spec.alphabet();
  ball.oracle = make_oracle(spec);
  ball.radius = meta.radius;
  ball.margin = meta.radius - meta.trusted_radius;
  ball.words.reserve(graph->vertex_count());
  for (VertexId v = 0; v < static_cast<VertexId>(graph->vertex_count()); ++v) {
    Word w;
    try {
      w = ball.alphabet.parse(graph->label(v));
    } catch (const Error& e) {
      throw Error(ErrorCode::kOracleInconsistent, "label " + graph->label(v) + ": " + e.what());
    }
    if (ball.oracle->normal_form(w) != w || static_cast<int>(w.size()) > ball.radius) {
      throw Error(ErrorCode::kOracleInconsistent, "label " + graph->label(v) + " is not a normal form in the ball");
    }
    if (!ball.index.emplace(w, v).second) throw Error(ErrorCode::kOracleInconsistent, "repeated label");
    ball.words.push_back(std::move(w));
  }
  if (!ball.words[0].empty()) throw Error(ErrorCode::kOracleInconsistent, "vertex 0 is not the identity");
  ball.graph = std::move(graph);
  return ball;
}

}  // namespace stablab
