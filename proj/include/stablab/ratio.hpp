#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace stablab {

// Exact nonnegative-or-negative rational used for t, C, kappa, lambda so that
// threshold comparisons like min(d(x,a), d(x,b)) >= t * d(a,b) are exact.
class Ratio {
 public:
  constexpr Ratio() = default;
  Ratio(std::int64_t num, std::int64_t den = 1);

  // Accepts "3", "1/3", "0.49", "-2".
  static Ratio parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // floor(this * k)
  std::int64_t floor_times(std::int64_t k) const;
  // ceil(this * k)
  std::int64_t ceil_times(std::int64_t k) const;

  std::string str() const;

  friend Ratio operator+(const Ratio& a, const Ratio& b);
  friend Ratio operator-(const Ratio& a, const Ratio& b);
  friend Ratio operator*(const Ratio& a, const Ratio& b);
  friend Ratio operator/(const Ratio& a, const Ratio& b);
  friend bool operator==(const Ratio& a, const Ratio& b) = default;
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace stablab
