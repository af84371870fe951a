#pragma once

#include <chrono>
#include <optional>
#include <string>

namespace stablab {

// Wall-clock budget. A default-constructed deadline never expires.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;
  static Deadline after_seconds(double seconds) {
    Deadline d;
    d.end_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
    return d;
  }

  bool limited() const { return end_.has_value(); }
  bool expired() const { return end_ && Clock::now() >= *end_; }
  // Throws BudgetExceeded once the deadline has passed.
  void check(const std::string& what) const;

 private:
  std::optional<Clock::time_point> end_;
};

}  // namespace stablab
