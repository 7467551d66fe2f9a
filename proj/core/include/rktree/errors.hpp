#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rktree {

// Malformed input text (bad JSON, bad number literal). Carries a line/column
// hint in the message when the underlying parser provides one.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structurally well-formed input that violates a documented constraint.
// The message names the offending field.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An implicit stage solve did not reach tolerance within the iteration cap.
class ConvergenceFailure : public std::runtime_error {
 public:
  ConvergenceFailure(const std::string& msg, std::vector<double> residual_trace)
      : std::runtime_error(msg), trace_(std::move(residual_trace)) {}

  // Update norms per fixed-point iteration, in order.
  const std::vector<double>& residual_trace() const { return trace_; }

 private:
  std::vector<double> trace_;
};

// NaN or Inf escaped a floating-point integration.
class NumericalOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rktree
