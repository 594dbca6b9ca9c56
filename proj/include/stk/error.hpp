#ifndef STK_ERROR_HPP_
#define STK_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stk {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed instance / solution / report text. `line` is 1-based, 0 when the
// problem is not tied to a single line (e.g. a disconnected graph).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// An exhaustive oracle was asked to enumerate beyond its hard size guard.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

// A sampled tree cannot host a feasible solution (partial multicut with too
// few separable pairs). The pipeline skips such trees and counts them.
class TreeInfeasible : public Error {
 public:
  using Error::Error;
};

}  // namespace stk

#endif  // STK_ERROR_HPP_
