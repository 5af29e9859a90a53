#pragma once

#include <stdexcept>
#include <string>

namespace simdiff {

/// A series or iteration hit its term cap before converging.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// A least-squares system is too ill-conditioned to trust its solution.
class IllConditionedError : public std::runtime_error {
 public:
  IllConditionedError(const std::string& what, double condition)
      : std::runtime_error(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

}  // namespace simdiff
