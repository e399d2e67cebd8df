#pragma once

#include <complex>
#include <map>
#include <string>

#include "tqft/errors.hpp"

namespace tqft::knot {

// Sparse Laurent polynomial with exact integer coefficients.  Exponents are
// stored in half-units of the formal variable: key n stands for var^(n/2),
// so half-integer powers (e.g. sqrt(t)) need no fractional type.  No zero
// coefficient is ever stored; the representation is canonical.
class LaurentPolynomial {
 public:
  using Map = std::map<long, long long>;

  LaurentPolynomial() = default;  // zero polynomial
  static LaurentPolynomial constant(long long c);
  // coeff * var^(half_exponent / 2)
  static LaurentPolynomial monomial(long long coeff, long half_exponent);

  const Map& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  long long coefficient(long half_exponent) const;

  LaurentPolynomial& operator+=(const LaurentPolynomial& rhs);
  LaurentPolynomial& operator-=(const LaurentPolynomial& rhs);
  friend LaurentPolynomial operator+(LaurentPolynomial a,
                                     const LaurentPolynomial& b) {
    a += b;
    return a;
  }
  friend LaurentPolynomial operator-(LaurentPolynomial a,
                                     const LaurentPolynomial& b) {
    a -= b;
    return a;
  }
  friend LaurentPolynomial operator*(const LaurentPolynomial& a,
                                     const LaurentPolynomial& b);
  friend bool operator==(const LaurentPolynomial& a,
                         const LaurentPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  LaurentPolynomial scaled(long long c) const;
  // Multiply by var^(dh/2), i.e. shift every exponent key by dh.
  LaurentPolynomial shifted(long dh) const;
  // var -> var^{-1}.
  LaurentPolynomial mirrored() const;
  // Exponent substitution var -> w^(num/den): each key n must map to an
  // integer n*num/den (throws ConsistencyError otherwise).  Used for exact
  // variable changes such as t = A^{-4}.
  LaurentPolynomial mapped_exponents(long num, long den) const;

  // Numeric evaluation at var = v.  Half powers use the principal branch:
  // v^(1/2) = exp(log|v|/2 + i*arg(v)/2) with arg in (-pi, pi].
  std::complex<double> evaluate(std::complex<double> v) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void set(long half_exponent, long long coeff);
  Map coeffs_;
};

}  // namespace tqft::knot
