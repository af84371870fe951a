#include "stablab/ratio.hpp"

#include <charconv>
#include <numeric>

#include "stablab/error.hpp"

namespace stablab {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::kInvalidParameter, "cannot parse number '" + std::string(whole) + "'");
  }
  return v;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

Ratio::Ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorCode::kInvalidParameter, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g == 0) g = 1;
  num_ = num / g;
  den_ = den / g;
}

Ratio Ratio::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return Ratio(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view ip = text.substr(0, dot);
    std::string_view fp = text.substr(dot + 1);
    bool neg = !ip.empty() && ip.front() == '-';
    if (neg) ip.remove_prefix(1);
    if (fp.size() > 15) throw Error(ErrorCode::kInvalidParameter, "too many decimals in '" + std::string(text) + "'");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
    std::int64_t whole = ip.empty() ? 0 : parse_int(ip, text);
    std::int64_t frac = fp.empty() ? 0 : parse_int(fp, text);
    std::int64_t num = whole * den + frac;
    return Ratio(neg ? -num : num, den);
  }
  return Ratio(parse_int(text, text), 1);
}

std::int64_t Ratio::floor_times(std::int64_t k) const { return floor_div(num_ * k, den_); }

std::int64_t Ratio::ceil_times(std::int64_t k) const { return -floor_div(-num_ * k, den_); }

std::string Ratio::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Ratio operator+(const Ratio& a, const Ratio& b) { return Ratio(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_); }
Ratio operator-(const Ratio& a, const Ratio& b) { return Ratio(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_); }
Ratio operator*(const Ratio& a, const Ratio& b) { return Ratio(a.num_ * b.num_, a.den_ * b.den_); }
Ratio operator/(const Ratio& a, const Ratio& b) { return Ratio(a.num_ * b.den_, a.den_ * b.num_); }

std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
  return (a.num_ * b.den_) <=> (b.num_ * a.den_);
}

}  // namespace stablab
