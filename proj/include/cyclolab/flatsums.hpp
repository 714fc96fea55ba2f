#pragma once

// Sparse exponential sums f(z) = sum_j a_j z^{b_j} restricted to the d-th roots
// of unity, and the finite set S_N of orders d admitting a unimodular one.
//
// Flatness is generalized from |f|^2 = 1 to |f|^2 = mu for a positive target
// mu, so quadratic-phase sums (|f|^2 = d) stay inside exact arithmetic.
//
// Two scalar modes share the same templates:
//   exact:   coefficients are CyclotomicNumber, mu is Rational;
//   numeric: coefficients are std::complex<double>, mu is double.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cyclolab/cyclotomic.hpp"
#include "cyclolab/numtheory.hpp"

namespace cyclolab::flatsums {

template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<CyclotomicNumber> {
  using Modulus = Rational;
  static constexpr bool exact = true;
  static CyclotomicNumber conj(const CyclotomicNumber& x) { return x.conj(); }
  static CyclotomicNumber zero() { return CyclotomicNumber(0L); }
};

template <>
struct ScalarTraits<std::complex<double>> {
  using Modulus = double;
  static constexpr bool exact = false;
  static std::complex<double> conj(const std::complex<double>& x) { return std::conj(x); }
  static std::complex<double> zero() { return 0.0; }
};

/// f(z) = sum_j coeffs[j] z^{exponents[j]} considered on mu_d, with target
/// squared modulus mu. Exponents are pairwise distinct integers.
template <class Scalar>
struct SparseExpSum {
  using Modulus = typename ScalarTraits<Scalar>::Modulus;

  i64 d = 1;
  std::vector<i64> exponents;
  std::vector<Scalar> coeffs;
  Modulus mu = Modulus(1);

  SparseExpSum() = default;
  SparseExpSum(i64 order, std::vector<i64> b, std::vector<Scalar> a, Modulus target = Modulus(1));

  std::size_t size() const { return exponents.size(); }
};

using ExactSum = SparseExpSum<CyclotomicNumber>;
using NumericSum = SparseExpSum<std::complex<double>>;

/// Embeds an exact sum into numeric mode with the fixed embedding.
NumericSum to_numeric(const ExactSum& f);

/// f(zeta_d^l) computed exactly.
CyclotomicNumber evaluate_exact(const ExactSum& f, i64 l);
std::complex<double> evaluate(const NumericSum& f, i64 l);

/// The quadratic-phase sum sum_{j=0}^{d-1} zeta_d^{j^2} z^j with mu = d.
ExactSum chirp(i64 d);

// --- validity --------------------------------------------------------------

struct ValidityReport {
  bool has_zero_exponent = false;
  bool gcd_is_one = false;
  bool subset_sums_nonzero = false;
  /// Bitmask (term i <-> bit i) of a vanishing subset, when one exists.
  std::optional<std::uint32_t> vanishing_subset;
  bool all() const { return has_zero_exponent && gcd_is_one && subset_sums_nonzero; }
};

/// The three side conditions on an N-term sum. Throws Error("subset check too
/// large") when N > 20.
ValidityReport validate_definition(const ExactSum& f);

/// Numeric analogue: subset sums count as vanishing below `tolerance`.
/// Also reports the smallest subset-sum modulus.
ValidityReport validate_definition(const NumericSum& f, double tolerance, double* min_subset_modulus = nullptr);

// --- autocorrelation and flatness ------------------------------------------

/// values[rho] = sum over ordered pairs (i, j) with b_i - b_j = rho (mod d) of
/// a_i conj(a_j). Satisfies |f(zeta_d^l)|^2 = sum_rho values[rho] zeta_d^{l rho}.
template <class Scalar>
struct AutocorrelationProfile {
  i64 d = 1;
  std::vector<Scalar> values;
};

template <class Scalar>
AutocorrelationProfile<Scalar> grouped_autocorrelation(const SparseExpSum<Scalar>& f);

struct FlatnessResult {
  bool flat = false;
  /// Exact mode: failing residue rho. Numeric mode: l of the largest deviation.
  std::optional<i64> witness;
  /// Numeric mode only: max_l | |f(zeta_d^l)|^2 - mu |.
  double max_deviation = 0.0;
};

/// Exact: A(0) = mu and A(rho) = 0 otherwise.
FlatnessResult is_flat(const ExactSum& f);
/// Numeric: evaluates every l; flat when the max deviation is below `tolerance`.
FlatnessResult is_flat(const NumericSum& f, double tolerance = 1e-9);

// --- short sums are never flat ----------------------------------------------

struct FischlerScanReport {
  int M = 0;
  i64 d = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  /// Fewer than M integers satisfy 4|c| < d, so no admissible sum exists.
  bool vacuous = false;
  int non_flat = 0;
  /// Trials whose failing residue was the extreme difference c_max - c_min.
  int witnessed_by_extreme_difference = 0;
  std::vector<ExactSum> counterexamples;
};

/// Samples nonzero coefficients and distinct exponents with max |c| < d/4 and
/// confirms the sum is not flat on mu_d. Trials are independently seeded so
/// the result does not depend on `threads`.
FischlerScanReport fischler_scan(int M, i64 d, int trials, std::uint64_t seed, int threads = 1);

// --- Dirichlet reduction ---------------------------------------------------

struct DirichletApproximation {
  i64 q = 0;
  std::vector<i64> p;
};

/// Smallest q in [1, Q] with |q b_j / d - p_j| < 1/4 for all j, p_j nearest.
DirichletApproximation dirichlet_approx(const std::vector<i64>& b, i64 d, i64 Q);

/// 4^N, saturating at INT64_MAX.
i64 dirichlet_bound(std::size_t N);

struct ReductionCertificate {
  std::vector<i64> b;
  i64 d = 0;
  i64 q = 0, q_prime = 0, e = 0, d_prime = 0;
  std::vector<i64> p;
  std::vector<i64> c;                         // distinct reduced exponents, c[0] = 0
  std::vector<std::vector<std::size_t>> groups;  // E_k: indices j with c_k = q' b_j - d' p_j
  ExactSum g;                                 // sum_k u_k z^{c_k} on mu_{d'}
  bool input_subset_condition = false;
  bool output_subset_condition = false;
};

/// Runs the Dirichlet reduction on an exact flat sum containing exponent 0 with
/// gcd(b, d) = 1 and certifies every structural invariant. Throws Error when
/// the preconditions fail and InternalInconsistency when a certified property
/// does not hold.
ReductionCertificate reduce_instance(const ExactSum& f);

// --- numeric feasibility search --------------------------------------------

/// F(a) = sum_l (|sum_j a_j zeta_d^{l b_j}|^2 - mu)^2 and its gradient with
/// respect to (Re a_j, Im a_j), packed as complex numbers dF/dRe + i dF/dIm.
double flat_objective(const std::vector<i64>& b, i64 d, double mu, const Eigen::VectorXcd& a,
                      Eigen::VectorXcd* gradient = nullptr);

enum class SearchVerdict { numeric_member, numeric_infeasible, unresolved };
std::string to_string(SearchVerdict v);

struct FlatSearchResult {
  Eigen::VectorXcd coeffs;
  double residual = 0.0;
  SearchVerdict verdict = SearchVerdict::unresolved;
  int restarts_run = 0;
};

inline constexpr double kMemberResidual = 1e-16;
inline constexpr double kInfeasibleResidual = 1e-6;
/// Every |a_j|^2 is kept at or above kCoefficientFloor * mu / N.
inline constexpr double kCoefficientFloor = 1e-3;

FlatSearchResult flat_search(const std::vector<i64>& b, i64 d, double mu, int restarts, std::uint64_t seed);

// --- S_N surveys -------------------------------------------------------------

/// 4^N (N^2 - 1) for N >= 2; 1 for N = 1.
i64 sn_upper_bound(int N);

enum class SurveyStatus { member, excluded, unresolved };
std::string to_string(SurveyStatus s);

struct SurveyRow {
  i64 d = 0;
  SurveyStatus status = SurveyStatus::unresolved;
  std::string evidence;
  int patterns = 0;           // canonical admissible exponent patterns
  int excluded_exactly = 0;   // by a singleton autocorrelation class
  int numeric_infeasible = 0;
  std::optional<ExactSum> exact_witness;
  std::optional<std::vector<i64>> numeric_pattern;
  double best_residual = -1.0;
  /// Validity of the numeric witness's coefficients (reported, not enforced).
  std::optional<bool> numeric_witness_valid;
};

struct SurveyOptions {
  i64 d_min = 1;
  int restarts = 20;
  std::uint64_t seed = 0;
  int threads = 1;
};

/// Throws Error("survey too large") for N > 3.
std::vector<SurveyRow> sn_survey(int N, i64 d_max, const SurveyOptions& options = {});

/// Admissible patterns of m <= N distinct residues mod d, containing 0, with
/// gcd 1, one representative per orbit under z -> z^t (t a unit) and
/// re-centering at any member. Representatives lie in (-d/2, d/2].
std::vector<std::vector<i64>> canonical_patterns(int N, i64 d);

/// True when some nonzero residue is the difference of exactly one ordered pair
/// of exponents; such patterns admit no flat sum with nonzero coefficients.
bool singleton_difference(const std::vector<i64>& pattern, i64 d, i64* residue = nullptr);

}  // namespace cyclolab::flatsums
