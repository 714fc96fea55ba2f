#pragma once

// Degrees of Kummer extensions Q(zeta_m, a^{1/d}) / Q(zeta_m) for rational a.

#include <optional>
#include <string>
#include <vector>

#include "cyclolab/cyclotomic.hpp"
#include "cyclolab/numtheory.hpp"
#include "cyclolab/rational.hpp"

namespace cyclolab::kummer {

/// True iff sqrt(a) lies in Q(zeta_m), by the conductor of Q(sqrt(s)) where
/// a = s t^2 with s squarefree. Throws Error for a = 0.
bool sqrt_in_cyclotomic(const Rational& a, i64 m);

/// Squarefree integer s (sign included) with a = s t^2, t rational.
BigInt squarefree_part(const Rational& a);

/// Conductor of Q(sqrt(s)) for squarefree s: |s| if s = 1 mod 4, else 4|s|.
BigInt quadratic_conductor(const BigInt& s);

/// Exact rational n-th root of a when one exists.
std::optional<Rational> rational_root(const Rational& a, i64 n);

/// True iff some beta in Q(zeta_m) has beta^n = a. Decided exactly: a real
/// n-th root b = |a|^{1/n} in an abelian field has b^2 rational, and then
/// sqrt(s) * zeta (zeta^n = sign a) lies in Q(zeta_m) iff every t = 1 (mod m)
/// fixes it, i.e. kronecker(disc, t) zeta^{t-1} = 1.
bool root_in_cyclotomic(const Rational& a, i64 n, i64 m);

struct Rank1Failure {
  i64 c = 1;
  i64 degree = 1;
  i64 odd_part = 1;
  i64 two_part = 1;
};

/// c = largest e | d with an e-th root of a in Q(zeta_m); degree = d / c.
/// Throws Error("torsion generator") for a = +-1, Error for a = 0 or d not
/// dividing m.
Rank1Failure rank1_failure(const Rational& a, i64 d, i64 m);

/// Prime-exponent vectors of positive rationals over their common primes.
std::vector<std::vector<i64>> exponent_matrix(const std::vector<Rational>& generators, std::vector<i64>* primes = nullptr);

/// Rank of the prime-exponent matrix equals the generator count.
bool multiplicatively_independent(const std::vector<Rational>& generators);

struct TowerDegrees {
  std::vector<i64> c;
  std::vector<i64> shape;  // d_l / c_l
  i64 order() const;
};

/// Per-generator failures when the Kummer group is the product of the rank-1
/// groups. Throws Error("entangled case unsupported") unless, for every prime
/// p, the generators of p-power order in the quotient are independent modulo
/// p-th powers in Q(zeta_m).
TowerDegrees tower_degrees(const std::vector<Rational>& generators, const std::vector<i64>& d, i64 m);

enum class OracleVerdict { yes, no, inconclusive };
std::string to_string(OracleVerdict v);

struct OracleResult {
  OracleVerdict verdict = OracleVerdict::no;
  /// When yes: beta = sum_i v_i zeta_m^i with beta^e = a, verified exactly.
  std::optional<CyclotomicNumber> root;
  std::vector<Rational> v;
  int candidate = -1;  // j in beta = |a|^{1/e} zeta_{2e}^j
  double scale_used = 0.0;
};

/// Searches each candidate root |a|^{1/e} zeta_{2e}^j for an integer relation
/// with 1, zeta_m, ..., zeta_m^{phi(m)-1} by LLL at scale 1e25 (retrying at
/// 1e40), then checks beta^e = a exactly. Requires e * phi(m) <= 64.
OracleResult root_membership_oracle(const Rational& a, i64 e, i64 m, double scale = 1e25);

/// Largest e | d with a "yes" oracle verdict; nullopt if any divisor is
/// inconclusive.
std::optional<i64> oracle_failure(const Rational& a, i64 d, i64 m);

}  // namespace cyclolab::kummer
