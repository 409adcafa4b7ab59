#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>

namespace hierfair {

/// Malformed instance, allocation, tree or argument. Maps to CLI exit code 2.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exhaustive enumeration would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A run passed its deadline.
class Timeout : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cooperative wall-clock deadline, polled from algorithm loops.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;
  explicit Deadline(Clock::time_point at) : at_(at) {}

  static Deadline after(std::chrono::milliseconds budget) {
    return Deadline(Clock::now() + budget);
  }

  bool expired() const { return at_ && Clock::now() >= *at_; }

  void check() const {
    if (expired()) throw Timeout("deadline exceeded");
  }

 private:
  std::optional<Clock::time_point> at_;
};

}  // namespace hierfair
