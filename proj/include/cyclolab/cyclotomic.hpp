#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_D).
//
// A CyclotomicNumber stores the full length-D power-basis vector
// (c_0, ..., c_{D-1}) meaning sum_i c_i zeta_D^i. The representation is not
// unique; equality and zero tests reduce modulo Phi_D on demand. Mixed-order
// arithmetic lifts both operands to lcm(D_x, D_y) first.
//
// The complex embedding is fixed once and for all: zeta_D -> exp(2 pi i / D).

#include <complex>
#include <string>
#include <vector>

#include "cyclolab/qpoly.hpp"
#include "cyclolab/rational.hpp"

namespace cyclolab {

class CyclotomicNumber {
 public:
  /// Zero in Q(zeta_1) = Q.
  CyclotomicNumber() : CyclotomicNumber(Rational(0)) {}
  /// Rational constant (order 1).
  CyclotomicNumber(const Rational& value);  // NOLINT(google-explicit-constructor)
  CyclotomicNumber(long value) : CyclotomicNumber(Rational(value)) {}  // NOLINT
  CyclotomicNumber(long order, std::vector<Rational> coeffs);

  /// zeta_D^k (k taken modulo D).
  static CyclotomicNumber zeta(long order, long long k = 1);
  static CyclotomicNumber zero(long order) { return CyclotomicNumber(order, std::vector<Rational>(order)); }

  long order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  /// Canonical image in Q(zeta_D') for D | D'.
  CyclotomicNumber lift(long new_order) const;

  CyclotomicNumber operator+(const CyclotomicNumber& o) const;
  CyclotomicNumber operator-(const CyclotomicNumber& o) const;
  CyclotomicNumber operator*(const CyclotomicNumber& o) const;
  CyclotomicNumber operator/(const CyclotomicNumber& o) const { return *this * o.inverse(); }
  CyclotomicNumber operator-() const;
  CyclotomicNumber& operator+=(const CyclotomicNumber& o) { return *this = *this + o; }
  CyclotomicNumber& operator*=(const CyclotomicNumber& o) { return *this = *this * o; }

  /// Throws Error("division by zero") for zero.
  CyclotomicNumber inverse() const;
  CyclotomicNumber pow(long long exponent) const;

  /// zeta_D -> zeta_D^t. Throws Error("not a Galois element") unless gcd(t, D) = 1.
  CyclotomicNumber galois_conjugate(long long t) const;
  CyclotomicNumber conj() const { return galois_conjugate(-1); }
  /// x * conj(x).
  CyclotomicNumber abs_squared() const;

  bool is_zero() const;
  /// Value is a rational number (after reduction).
  bool is_rational() const;
  /// Rational value; throws if not rational.
  Rational rational_value() const;
  bool operator==(const CyclotomicNumber& o) const { return (*this - o).is_zero(); }
  bool operator!=(const CyclotomicNumber& o) const { return !(*this == o); }

  /// Residue modulo Phi_D, of degree < phi(D).
  QPoly reduced() const;
  /// Same value, written with all coefficients at exponents < phi(D).
  CyclotomicNumber normalized() const;

  std::complex<double> embed() const;

  /// "c0 + c1*z^1 + ... @ D".
  std::string to_string() const;
  static CyclotomicNumber parse(const std::string& text);

 private:
  long order_ = 1;
  std::vector<Rational> coeffs_;
};

/// Both operands lifted to a common order.
void lift_common(CyclotomicNumber& a, CyclotomicNumber& b);

/// Sum over pairs of zeta_D^{i} c_i, evaluated with the fixed embedding.
std::complex<double> embed_power_basis(long order, const std::vector<Rational>& coeffs);

}  // namespace cyclolab
