#pragma once

// Dense univariate polynomials over Q, coefficient i multiplying x^i.

#include <complex>
#include <string>
#include <vector>

#include "cyclolab/rational.hpp"

namespace cyclolab {

class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rational> coeffs);
  static QPoly monomial(const Rational& c, int degree);
  static QPoly from_ints(const std::vector<long long>& coeffs);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int i) const;
  const Rational& leading() const { return coeffs_.back(); }

  QPoly operator+(const QPoly& o) const;
  QPoly operator-(const QPoly& o) const;
  QPoly operator*(const QPoly& o) const;
  QPoly operator*(const Rational& c) const;
  QPoly operator-() const;
  bool operator==(const QPoly& o) const { return coeffs_ == o.coeffs_; }

  /// Euclidean division; throws on a zero divisor.
  void divmod(const QPoly& divisor, QPoly& quotient, QPoly& remainder) const;
  QPoly operator%(const QPoly& o) const;
  QPoly operator/(const QPoly& o) const;

  QPoly derivative() const;
  QPoly monic() const;

  std::complex<double> eval(std::complex<double> z) const;

  /// Scales to integer coefficients with content 1 and positive leading
  /// coefficient.
  QPoly primitive() const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Monic gcd (zero when both inputs are zero).
QPoly gcd(QPoly a, QPoly b);

/// Extended Euclid: returns g = gcd(a, b) (monic) with s*a + t*b = g.
QPoly ext_gcd(const QPoly& a, const QPoly& b, QPoly& s, QPoly& t);

/// Squarefree part p / gcd(p, p'), made primitive.
QPoly squarefree_part(const QPoly& p);

/// The n-th cyclotomic polynomial, by dividing x^n - 1 by Phi_e for the proper
/// divisors e of n. Results are memoized.
const QPoly& cyclotomic_polynomial(long long n);

/// Parses "x^3-2", "3x-1", "x^2 - x - 1" (integer or rational coefficients).
QPoly parse_polynomial(const std::string& text);

}  // namespace cyclolab
