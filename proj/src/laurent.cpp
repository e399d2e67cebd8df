#include "tqft/laurent.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace tqft::knot {

LaurentPolynomial LaurentPolynomial::constant(long long c) {
  return monomial(c, 0);
}

LaurentPolynomial LaurentPolynomial::monomial(long long coeff,
                                              long half_exponent) {
  LaurentPolynomial p;
  p.set(half_exponent, coeff);
  return p;
}

long long LaurentPolynomial::coefficient(long half_exponent) const {
  auto it = coeffs_.find(half_exponent);
  return it == coeffs_.end() ? 0 : it->second;
}

void LaurentPolynomial::set(long half_exponent, long long coeff) {
  if (coeff == 0) {
    coeffs_.erase(half_exponent);
  } else {
    coeffs_[half_exponent] = coeff;
  }
}

LaurentPolynomial& LaurentPolynomial::operator+=(
    const LaurentPolynomial& rhs) {
  for (const auto& [e, c] : rhs.coeffs_) {
    set(e, coefficient(e) + c);
  }
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(
    const LaurentPolynomial& rhs) {
  for (const auto& [e, c] : rhs.coeffs_) {
    set(e, coefficient(e) - c);
  }
  return *this;
}

LaurentPolynomial operator*(const LaurentPolynomial& a,
                            const LaurentPolynomial& b) {
  LaurentPolynomial out;
  for (const auto& [ea, ca] : a.coeffs_) {
    for (const auto& [eb, cb] : b.coeffs_) {
      out.set(ea + eb, out.coefficient(ea + eb) + ca * cb);
    }
  }
  return out;
}

LaurentPolynomial LaurentPolynomial::scaled(long long c) const {
  LaurentPolynomial out;
  if (c == 0) return out;
  for (const auto& [e, v] : coeffs_) out.coeffs_[e] = v * c;
  return out;
}

LaurentPolynomial LaurentPolynomial::shifted(long dh) const {
  LaurentPolynomial out;
  for (const auto& [e, v] : coeffs_) out.coeffs_[e + dh] = v;
  return out;
}

LaurentPolynomial LaurentPolynomial::mirrored() const {
  LaurentPolynomial out;
  for (const auto& [e, v] : coeffs_) out.coeffs_[-e] = v;
  return out;
}

LaurentPolynomial LaurentPolynomial::mapped_exponents(long num,
                                                      long den) const {
  if (den == 0) throw InputError("exponent substitution: zero denominator");
  LaurentPolynomial out;
  for (const auto& [e, v] : coeffs_) {
    const long long prod = static_cast<long long>(e) * num;
    if (prod % den != 0) {
      throw ConsistencyError(
          "exponent substitution would produce a fractional exponent key");
    }
    const long mapped = static_cast<long>(prod / den);
    out.set(mapped, out.coefficient(mapped) + v);
  }
  return out;
}

std::complex<double> LaurentPolynomial::evaluate(
    std::complex<double> v) const {
  std::complex<double> acc(0.0, 0.0);
  for (const auto& [e, c] : coeffs_) {
    acc += static_cast<double>(c) * std::pow(v, static_cast<double>(e) / 2.0);
  }
  return acc;
}

std::string LaurentPolynomial::to_string(const std::string& var) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Print from highest exponent down.
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    const long e = it->first;
    const long long c = it->second;
    if (!first) os << (c < 0 ? " - " : " + ");
    if (first && c < 0) os << "-";
    first = false;
    const long long mag = std::llabs(c);
    if (mag != 1 || e == 0) os << mag;
    if (e != 0) {
      os << var << "^";
      if (e % 2 == 0) {
        os << (e / 2);
      } else {
        os << "(" << e << "/2)";
      }
    }
  }
  return os.str();
}

}  // namespace tqft::knot
