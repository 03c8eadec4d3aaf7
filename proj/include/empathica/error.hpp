#pragma once

#include <stdexcept>
#include <string>

namespace empathica {

// Raised when an operation's documented precondition does not hold
// (c1 == c2 constraints, empty feasible sets, non-discoordination input to
// stabilization_check, ...). The CLI maps it to exit status 2.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed input documents. The CLI maps it to exit status 1.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// x^2 - eps*x + y = 0 has no real root.
class NoRealSolution : public std::domain_error {
 public:
  explicit NoRealSolution(const std::string& what) : std::domain_error(what) {}
};

}  // namespace empathica
