#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "stablab/graph.hpp"
#include "stablab/words.hpp"

namespace stablab {

enum class Family { kFree, kFreeAbelian, kFreeProduct, kDirectProduct, kSmallCancellation, kTiling };

// Description of a group (or tiling) with a finite generating set.
// Text form, also used as cache key:
//   free(2) free(2;ab) free_abelian(2;xy) small_cancellation(ab;[a,b]) tiling(4,5)
//   free_product(free_abelian(2;xy),free(1;b)) direct_product(free(1;a),free(1;b))
// For small_cancellation the part before ';' lists symbols and relators follow,
// separated by ';'.
struct GroupSpec {
  Family family = Family::kFree;
  int rank = 0;
  std::string symbols;
  std::shared_ptr<const GroupSpec> left, right;
  std::vector<std::string> relators;
  int p = 0, q = 0;

  static GroupSpec free(int k, std::string symbols = "");
  static GroupSpec free_abelian(int k, std::string symbols = "");
  static GroupSpec free_product(GroupSpec a, GroupSpec b);
  static GroupSpec direct_product(GroupSpec a, GroupSpec b);
  static GroupSpec small_cancellation(std::string symbols, std::vector<std::string> relators);
  static GroupSpec tiling(int p, int q);
  static GroupSpec parse(std::string_view text);

  std::string canonical() const;
  Alphabet alphabet() const { return Alphabet(symbols); }
};

// Canonical forms for elements. Normal forms of the structured families are
// geodesic words, so their length is the word length.
class WordOracle {
 public:
  virtual ~WordOracle() = default;
  virtual std::size_t rank() const = 0;
  virtual Word normal_form(const Word& w) const = 0;
  // nullopt when the element cannot be resolved (outside an indexed ball).
  virtual std::optional<Word> try_normal_form(const Word& w) const { return normal_form(w); }
  // Whether "normal form uses only generators S" decides membership in <S>.
  virtual bool letters_decide_membership() const { return true; }
  bool equal(const Word& a, const Word& b) const { return normal_form(a) == normal_form(b); }
};

// Symmetrized presentation satisfying C'(1/6); throws NotSmallCancellation.
class Presentation {
 public:
  Presentation(Alphabet alphabet, std::vector<Word> relators);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Word>& relators() const { return relators_; }
  const std::vector<Word>& symmetrized() const { return sym_; }
  // Length of the longest piece.
  int max_piece() const { return max_piece_; }
  // Repeatedly replaces more than half of a relator by the shorter rest.
  Word dehn_reduce(const Word& w) const;
  bool is_identity(const Word& w) const { return dehn_reduce(w).empty(); }

 private:
  Alphabet alphabet_;
  std::vector<Word> relators_;
  std::vector<Word> sym_;
  std::vector<std::vector<int>> by_first_;  // indexed by letter + rank
  int max_piece_ = 0;
};

struct OracleOptions {
  // Small-cancellation only: normal forms are resolved against a ball of
  // this radius, built once when the oracle is created.
  int index_radius = 6;
  std::size_t vertex_cap = 2'000'000;
};

std::shared_ptr<const WordOracle> make_oracle(const GroupSpec& spec, const OracleOptions& opts = {});

struct GroupBall {
  GroupSpec spec;
  Alphabet alphabet;
  std::shared_ptr<const WordOracle> oracle;
  int radius = 0;
  int margin = 0;
  std::shared_ptr<const MetricGraph> graph;
  std::vector<Word> words;  // normal form of each vertex
  std::unordered_map<Word, VertexId, WordHash> index;

  // Vertex of the element represented by w, if it lies in the ball.
  std::optional<VertexId> find(const Word& w) const;
  int length(VertexId v) const { return static_cast<int>(words[v].size()); }
};

struct BallOptions {
  std::size_t vertex_cap = 2'000'000;
  // Trusted radius is radius - margin; -1 means ceil(radius / 4).
  int margin = -1;
};

// Ball of radius R in the Cayley graph; vertex ids follow BFS discovery with
// generators tried in the order a, A, b, B, ... so the identity is vertex 0.
// Throws BallTooLarge when the vertex cap would be exceeded.
GroupBall cayley_ball(const GroupSpec& spec, int radius, const BallOptions& opts = {});

// Rebuilds the word index of a ball from its labelled graph (as produced by
// cayley_ball and read back from a cache). Each label must be a normal form;
// otherwise OracleInconsistent.
GroupBall ball_from_graph(const GroupSpec& spec, std::shared_ptr<const MetricGraph> graph);

}  // namespace stablab
