#pragma once

#include <stdexcept>
#include <string>

namespace pstforge {

/// Thrown when caller-supplied data violates a documented precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class NoSolutionReason {
  kIntervalsDisjoint,
  kAmplitudeOutOfRange,
  kBrokenNetwork,
  kNotConverged,
};

const char* to_string(NoSolutionReason reason);

/// A well-posed problem that has no admissible solution.
class NoSolution : public std::runtime_error {
 public:
  NoSolution(NoSolutionReason reason, const std::string& what)
      : std::runtime_error(what), reason_(reason) {}

  NoSolutionReason reason() const noexcept { return reason_; }

 private:
  NoSolutionReason reason_;
};

}  // namespace pstforge
