#pragma once

#include <boost/rational.hpp>
#include <string>

namespace tqft {

// Exact rational scalar used for conformal weights, OPE exponents and spin
// labels.  Denominators stay tiny (≤ a few dozen), so long long is ample.
using Rat = boost::rational<long long>;

inline std::string to_string(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace tqft
