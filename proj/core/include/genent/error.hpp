#pragma once

#include <stdexcept>
#include <string>

namespace genent {

// Bad input: out-of-range parameters, shape mismatches, invalid states.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical routine failed to meet its contract (non-convergence,
// violated certificate).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

[[noreturn]] inline void fail(const std::string& what) { throw InvalidArgument(what); }

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(what);
}

}  // namespace detail
}  // namespace genent
