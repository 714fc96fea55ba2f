#pragma once

// Absolute logarithmic Weil height of algebraic numbers given by minimal
// polynomials.

#include <complex>
#include <vector>

#include "cyclolab/qpoly.hpp"
#include "cyclolab/rational.hpp"

namespace cyclolab::heights {

inline constexpr int kMaxDegree = 64;

/// Roots sorted by (real, imag), from the companion matrix eigenvalues with
/// Newton polishing. Throws Error for degree < 1 or > 64.
std::vector<std::complex<double>> polynomial_roots(const QPoly& p);

/// Fujiwara's bound on the moduli of the roots.
double fujiwara_bound(const QPoly& p);

struct IrreducibilityProbe {
  bool rational_root = false;
  bool quadratic_factor = false;
  bool cubic_factor = false;
  bool reducible() const { return rational_root || quadratic_factor || cubic_factor; }
};

/// Looks for factors of degree 1, 2 and 3 by grouping numerical roots and
/// verifying candidates by exact division.
IrreducibilityProbe probe_irreducibility(const QPoly& p);

struct AlgebraicNumber {
  QPoly minpoly;       // primitive, positive leading coefficient
  int root_index = 0;  // into polynomial_roots(minpoly)

  /// Normalizes p; throws Error("zero polynomial"), Error for degree 0 or a
  /// root index out of range, and Error("polynomial is reducible") when a probe
  /// finds a factor.
  AlgebraicNumber(const QPoly& p, int index = 0);
  static AlgebraicNumber rational(const Rational& q);

  int degree() const { return minpoly.degree(); }
  std::complex<double> value() const;
};

/// (1/deg) (log |lc| + sum log max(1, |root|)) of a nonzero polynomial.
double weil_height(const QPoly& p);
double weil_height(const AlgebraicNumber& alpha);

/// log of |lc| prod max(1, |root|).
double log_mahler_measure(const QPoly& p);

/// Minimal polynomial of alpha^n, from exact power sums of the roots.
/// Throws Error for n = 0 or for alpha = 0 with n < 0.
AlgebraicNumber power_transform(const AlgebraicNumber& alpha, long n);

/// Kronecker test: minpoly divides x^k - 1 for some k with phi(k) <= deg.
bool is_root_of_unity(const AlgebraicNumber& alpha);

struct RadicalHeight {
  double height = 0.0;
  bool cross_checked = false;  // q x^n - p irreducible and its height agreed
};

/// h(a^{1/n}) = log max(|p|, q) / n for a = p/q > 0.
RadicalHeight radical_height(const Rational& a, long n);

}  // namespace cyclolab::heights
