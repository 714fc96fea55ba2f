#pragma once

// Sums of radicals sum_j a_j prod_l alpha_l^{k_{j,l}/d_l} with cyclotomic
// coefficients a_j in Q(zeta_D), and the Galois action
//   (t, r): a_j -> phi_t(a_j) prod_l zeta_{d_l/c_l}^{r_l k_{j,l}}.
//
// Radicals are evaluated on the positive real branch.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "cyclolab/cyclotomic.hpp"
#include "cyclolab/equidist.hpp"
#include "cyclolab/numtheory.hpp"
#include "cyclolab/rational.hpp"

namespace cyclolab::radical {

/// Upper limit on enumerated group elements.
inline constexpr i64 kMaxOrbit = 1000000;

struct RadicalContext {
  std::vector<Rational> generators;
  std::vector<i64> d;
  std::vector<i64> c;
  i64 D = 1;
  bool user_failures = false;

  /// Checks positivity and multiplicative independence of the generators,
  /// replaces D by lcm(D, d_1, ..., d_b) and fills c from
  /// kummer::rank1_failure unless `failures` is given (each c_l must divide
  /// d_l).
  static RadicalContext make(std::vector<Rational> generators, std::vector<i64> d, i64 D,
                             std::optional<std::vector<i64>> failures = {});

  std::size_t rank() const { return generators.size(); }
  /// d_l / c_l.
  std::vector<i64> kummer_orders() const;
  i64 group_order() const;
  /// The r vector of the element with this mixed-radix index.
  std::vector<i64> element(i64 index) const;

  bool operator==(const RadicalContext& o) const;
};

struct RadicalTerm {
  CyclotomicNumber coeff;
  std::vector<i64> k;
};

struct RadicalSum {
  RadicalContext context;
  std::vector<RadicalTerm> terms;

  /// Throws Error when an exponent vector has the wrong length or a
  /// coefficient order does not divide D.
  RadicalSum(RadicalContext ctx, std::vector<RadicalTerm> terms);

  /// prod_l alpha_l^{k_l / d_l} > 0.
  double radical_value(const std::vector<i64>& k) const;
  /// a_j times its radical.
  std::complex<double> term_value(std::size_t j) const;
  std::complex<double> value() const;

  /// "(1/2) * z8^3 * 2^(1/2) + ...", accepted back by parse_radical_sum.
  std::string to_string() const;
};

/// Exact equality after normalization, in equal contexts.
bool operator==(const RadicalSum& a, const RadicalSum& b);

/// Parses terms such as "(1/2) * z8^1 * 2^(3/6) - 3 * 5^(1/3)". Generators
/// are the radicands in order of appearance, d_l the lcm of their written
/// denominators, D the lcm of the z orders and `min_D`. Failures may be forced
/// with `failures`.
RadicalSum parse_radical_sum(const std::string& text, i64 min_D = 1,
                             std::optional<std::vector<i64>> failures = {});

struct GaloisElement {
  i64 t = 1;
  std::vector<i64> r;

  static GaloisElement identity(const RadicalContext& ctx);
  /// (this o other)(x) = this(other(x)).
  GaloisElement compose(const GaloisElement& other, const RadicalContext& ctx) const;
  std::string to_string() const;
};

/// Throws Error("t must be coprime to D") and Error on an r of wrong length.
RadicalSum apply_galois(const GaloisElement& sigma, const RadicalSum& x);

/// |psi_r x|^2 for every r in H, in mixed-radix order. Throws
/// Error("orbit too large") beyond kMaxOrbit.
std::vector<double> orbit_moduli(const RadicalSum& x);

/// |sigma x|^2 from the term moduli, the angles arg z_j - arg z_i and the
/// rotations 2 pi sum_l r_l c_l (k_{j,l} - k_{i,l}) / d_l. Requires t = 1.
double cosine_expansion(const RadicalSum& x, const GaloisElement& sigma);

/// 1 - eps <= v <= 1 + eps, with 1e-12 slack on both ends.
bool in_band(double v, double eps);

struct DGamma {
  Rational fraction;
  bool concyclic = false;
};

DGamma d_gamma_eps(const RadicalSum& x, double eps);

struct MarginalStats {
  std::vector<i64> units;
  std::vector<Rational> rows;  // d(phi_t) for each unit t
  Rational max;
  Rational average;
  Rational full_group;  // fraction over all (t, r)
  bool eq0 = false;     // average == full_group
};

/// Throws Error("orbit too large") when phi(D) |H| exceeds kMaxOrbit.
MarginalStats marginal_orbit_stats(const RadicalSum& x, double eps);

/// Kummer elements whose rotation 2 pi r_l c_l / d_l lies on arc l for every
/// l and whose |psi_r x|^2 lies in the band.
std::vector<GaloisElement> sigma_search(const RadicalSum& x, const equidist::ArcBox& box, double eps);

/// Merges equal exponent vectors in order of first appearance and drops
/// vanishing coefficients.
RadicalSum normalize_terms(const RadicalSum& x);

struct FactoredSum {
  RadicalSum y;
  RadicalSum z;  // a single term with coefficient 1, in x's context
  std::vector<i64> divisors;  // D_t
};

/// x = y z with y's exponents shifted to minimum 0 and divided by D_t.
/// Throws Error("zero radical sum") for x = 0.
FactoredSum factor_out_division_point(const RadicalSum& x);

struct TermRelation {
  i64 lambda = 1;
  std::vector<i64> mu;  // aligned with J; lambda k_j + sum mu_i k_i = 0 (mod m)
};

struct ColumnRelations {
  std::vector<std::size_t> J;
  std::vector<TermRelation> relations;  // one per row
};

/// Per column of `kmatrix` (rows = terms), a greedy maximal J whose entries
/// are nonzero mod m and satisfy no relation beyond the individual ones, and
/// the least positive lambda expressing each row through J.
std::vector<ColumnRelations> exponent_relation_basis(const std::vector<std::vector<i64>>& kmatrix, i64 m);

struct IdentitySides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// sum x_j^2 + eta sum_{i != j} x_i x_j and the rearranged form
/// -(eta/2) sum_{i != j} (x_i - x_j)^2 + (1 + eta(n - 1)) sum x_j^2.
IdentitySides energy_identity(const std::vector<double>& xs, double eta);

struct EnergyProfile {
  double energy = 0.0;
  std::vector<double> term_moduli;  // |z_j|^2
  DGamma dgamma;
  IdentitySides plus, minus;  // eta = +-sin(gamma eps), x_j = |z_j|
  bool identity_holds = false;
};

EnergyProfile term_energy_profile(const RadicalSum& x, double eps, double gamma = 1.0);

}  // namespace cyclolab::radical
