#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace lsw {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;
using RealVector = std::vector<double>;

// All input validation errors funnel through this so the CLI can turn them
// into clean diagnostics instead of stack traces.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Internal consistency failures (broken invariants, singular factors, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void Require(bool cond, const std::string& what) {
  if (!cond) throw InvalidArgument(what);
}

}  // namespace lsw
