#pragma once

#include <stdexcept>
#include <string>

namespace tqft {

// Bad caller input: malformed files, out-of-range degrees, invalid diagrams,
// unknown labels, mismatched sizes.  Always recoverable by fixing the input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation could not be carried out under the requested configuration:
// grids too coarse for the integrand, degenerate contours, singular
// evaluation points, eigensolver failures.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal cross-check that must hold for every valid input failed.
// This signals a bug in the library itself, never a bad input.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tqft
