#pragma once

#include <stdexcept>
#include <string>

namespace shg {

// Invalid input: out-of-range indices, malformed blocks, bad CLI flags.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A root bracket failed to isolate exactly one eigenvalue.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A truncated expansion needs a larger block than the configured cap.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, int required_s_max)
      : std::runtime_error(what), required_s_max_(required_s_max) {}
  int required_s_max() const noexcept { return required_s_max_; }

 private:
  int required_s_max_;
};

// A normalized measure whose denominator vanishes.
class UndefinedMeasureError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace shg
