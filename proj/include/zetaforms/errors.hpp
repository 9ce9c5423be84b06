#pragma once

#include <stdexcept>
#include <string>

namespace zf {

// Bad input: the CLI maps this to exit code 2.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Parameter triple/quadruple rejected; `predicate` names the violated rule.
class InvalidParams : public InvalidInput {
 public:
  InvalidParams(std::string predicate, const std::string& detail)
      : InvalidInput(predicate + ": " + detail), predicate_(std::move(predicate)) {}
  const std::string& predicate() const { return predicate_; }

 private:
  std::string predicate_;
};

// A computation could not reach its target (precision unreachable, iteration
// did not converge, point on a branch cut).  Exit code 3.
class NumericFailure : public std::runtime_error {
 public:
  explicit NumericFailure(const std::string& what) : std::runtime_error(what) {}
};

class BranchError : public NumericFailure {
 public:
  explicit BranchError(const std::string& what) : NumericFailure("branch cut: " + what) {}
};

// A mathematical invariant did not hold.  Exit code 1.
class VerificationFailure : public std::runtime_error {
 public:
  explicit VerificationFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace zf
