#pragma once

#include <stdexcept>
#include <string>

namespace lyrank {

/// Bad input: malformed records, out-of-range values, schema mismatches.
/// The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical routine could not produce a result (non-convergence,
/// degenerate spectrum). The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lyrank
