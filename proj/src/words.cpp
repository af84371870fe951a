#include "stablab/words.hpp"

#include <algorithm>
#include <cctype>

#include "stablab/error.hpp"

namespace stablab {

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (Letter& l : out) l = -l;
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + lo, r.begin() + hi);
}

Alphabet::Alphabet(std::string symbols) : symbols_(std::move(symbols)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    char c = symbols_[i];
    if (!std::islower(static_cast<unsigned char>(c)) || c == 'e') {
      throw Error(ErrorCode::kInvalidParameter, std::string("generator symbol '") + c +
                                                    "' must be a lowercase letter other than 'e'");
    }
    if (symbols_.find(c) != i) throw Error(ErrorCode::kInvalidParameter, std::string("repeated symbol ") + c);
  }
}

std::string Alphabet::format(const Word& w) const {
  if (w.empty()) return "e";
  std::string out;
  for (Letter l : w) {
    char c = symbols_.at(generator_of(l));
    out.push_back(l > 0 ? c : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return out;
}

Word Alphabet::parse(std::string_view text) const {
  Word out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == ' ' || c == '*') continue;
    if (c == 'e') continue;
    if (c == '[') {
      auto comma = text.find(',', i);
      auto close = text.find(']', i);
      if (comma == std::string_view::npos || close == std::string_view::npos || comma > close) {
        throw Error(ErrorCode::kInvalidParameter, "bad commutator in '" + std::string(text) + "'");
      }
      Word u = parse(text.substr(i + 1, comma - i - 1));
      Word v = parse(text.substr(comma + 1, close - comma - 1));
      Word c4 = concat(concat(u, v), concat(inverse(u), inverse(v)));
      out.insert(out.end(), c4.begin(), c4.end());
      i = close;
      continue;
    }
    char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    auto pos = symbols_.find(lower);
    if (pos == std::string::npos) {
      throw Error(ErrorCode::kInvalidParameter,
                  std::string("unknown symbol '") + c + "' in '" + std::string(text) + "'");
    }
    Letter l = static_cast<Letter>(pos) + 1;
    out.push_back(c == lower ? l : -l);
  }
  return out;
}

std::vector<int> Alphabet::indices(std::string_view symbols) const {
  std::vector<int> out;
  for (char c : symbols) {
    if (c == ' ' || c == ',') continue;
    auto pos = symbols_.find(c);
    if (pos == std::string::npos) throw Error(ErrorCode::kInvalidParameter, std::string("unknown symbol ") + c);
    out.push_back(static_cast<int>(pos));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace stablab
