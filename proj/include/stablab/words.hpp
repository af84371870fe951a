#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace stablab {

// Generator i (0-based) is letter i+1, its inverse is -(i+1).
using Letter = int;
using Word = std::vector<Letter>;

inline Letter inverse_letter(Letter l) { return -l; }
inline int generator_of(Letter l) { return (l > 0 ? l : -l) - 1; }

Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
// Cancels adjacent inverse pairs.
Word free_reduce(const Word& w);
// Free reduction followed by removal of inverse pairs across the ends.
Word cyclic_reduce(const Word& w);

// Single lowercase symbols; the inverse of 'a' is written 'A', the identity "e".
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::string symbols);

  std::size_t size() const { return symbols_.size(); }
  const std::string& symbols() const { return symbols_; }
  std::string format(const Word& w) const;
  // Accepts letters, their uppercase inverses, "e", and commutators "[u,v]".
  Word parse(std::string_view text) const;
  // Generator indices of the listed symbols, e.g. "xy" -> {0, 1}.
  std::vector<int> indices(std::string_view symbols) const;

 private:
  std::string symbols_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (Letter l : w) {
      h ^= static_cast<std::size_t>(l + 64);
      h *= 1099511628211ULL;
    }
    return h;
  }
};

}  // namespace stablab
