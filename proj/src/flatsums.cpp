#include "cyclolab/flatsums.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "cyclolab/parallel.hpp"

namespace cyclolab::flatsums {

namespace {

i64 gcd_with(const std::vector<i64>& b, i64 d) {
  i64 g = d;
  for (i64 x : b) g = gcd_abs(g, x);
  return g;
}

std::complex<double> unit_root(i64 d, i64 k) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(mod_floor(k, d)) / static_cast<double>(d));
}

}  // namespace

template <class Scalar>
SparseExpSum<Scalar>::SparseExpSum(i64 order, std::vector<i64> b, std::vector<Scalar> a, Modulus target)
    : d(order), exponents(std::move(b)), coeffs(std::move(a)), mu(std::move(target)) {
  if (d < 1) throw Error("order d must be positive");
  if (exponents.size() != coeffs.size()) throw Error("exponent and coefficient counts differ");
  std::set<i64> seen(exponents.begin(), exponents.end());
  if (seen.size() != exponents.size()) throw Error("exponents must be pairwise distinct");
  if (!(mu > 0)) throw Error("modulus target must be positive");
}

template struct SparseExpSum<CyclotomicNumber>;
template struct SparseExpSum<std::complex<double>>;

NumericSum to_numeric(const ExactSum& f) {
  std::vector<std::complex<double>> a;
  a.reserve(f.size());
  for (const auto& c : f.coeffs) a.push_back(c.embed());
  return NumericSum(f.d, f.exponents, std::move(a), f.mu.get_d());
}

CyclotomicNumber evaluate_exact(const ExactSum& f, i64 l) {
  CyclotomicNumber acc(0L);
  for (std::size_t j = 0; j < f.size(); ++j)
    acc += f.coeffs[j] * CyclotomicNumber::zeta(static_cast<long>(f.d), l * f.exponents[j]);
  return acc;
}

std::complex<double> evaluate(const NumericSum& f, i64 l) {
  std::complex<double> acc = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) acc += f.coeffs[j] * unit_root(f.d, l * f.exponents[j]);
  return acc;
}

ExactSum chirp(i64 d) {
  std::vector<i64> b;
  std::vector<CyclotomicNumber> a;
  for (i64 j = 0; j < d; ++j) {
    b.push_back(j);
    a.push_back(CyclotomicNumber::zeta(static_cast<long>(d), j * j));
  }
  return ExactSum(d, std::move(b), std::move(a), Rational(static_cast<long>(d)));
}

// --- validity ----------------------------------------------------------------

ValidityReport validate_definition(const ExactSum& f) {
  const std::size_t n = f.size();
  if (n > 20) throw Error("subset check too large");
  ValidityReport report;
  report.has_zero_exponent = std::find(f.exponents.begin(), f.exponents.end(), 0) != f.exponents.end();
  report.gcd_is_one = gcd_with(f.exponents, f.d) == 1;

  long order = 1;
  for (const auto& c : f.coeffs) order = static_cast<long>(lcm_pos(order, c.order()));
  const std::size_t dim = static_cast<std::size_t>(euler_phi(order));
  std::vector<std::vector<Rational>> basis;
  for (const auto& c : f.coeffs) {
    QPoly r = c.lift(order).reduced();
    std::vector<Rational> v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = r.coeff(static_cast<int>(i));
    basis.push_back(std::move(v));
  }
  // Gray-code walk over non-empty subsets, one add or remove per step.
  std::vector<Rational> running(dim);
  std::uint32_t mask = 0;
  report.subset_sums_nonzero = true;
  for (std::uint32_t k = 1; k < (1U << n); ++k) {
    const std::uint32_t bit = static_cast<std::uint32_t>(__builtin_ctz(k));
    const bool adding = !(mask & (1U << bit));
    mask ^= 1U << bit;
    for (std::size_t i = 0; i < dim; ++i) {
      if (adding)
        running[i] += basis[bit][i];
      else
        running[i] -= basis[bit][i];
    }
    bool zero = std::all_of(running.begin(), running.end(), [](const Rational& q) { return q == 0; });
    if (zero) {
      report.subset_sums_nonzero = false;
      report.vanishing_subset = mask;
      break;
    }
  }
  return report;
}

ValidityReport validate_definition(const NumericSum& f, double tolerance, double* min_subset_modulus) {
  const std::size_t n = f.size();
  if (n > 20) throw Error("subset check too large");
  ValidityReport report;
  report.has_zero_exponent = std::find(f.exponents.begin(), f.exponents.end(), 0) != f.exponents.end();
  report.gcd_is_one = gcd_with(f.exponents, f.d) == 1;
  report.subset_sums_nonzero = true;
  double smallest = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    std::complex<double> sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1U << i)) sum += f.coeffs[i];
    double m = std::abs(sum);
    smallest = std::min(smallest, m);
    if (m < tolerance && report.subset_sums_nonzero) {
      report.subset_sums_nonzero = false;
      report.vanishing_subset = mask;
    }
  }
  if (min_subset_modulus) *min_subset_modulus = smallest;
  return report;
}

// --- autocorrelation and flatness ---------------------------------------------

template <class Scalar>
AutocorrelationProfile<Scalar> grouped_autocorrelation(const SparseExpSum<Scalar>& f) {
  AutocorrelationProfile<Scalar> profile;
  profile.d = f.d;
  profile.values.assign(static_cast<std::size_t>(f.d), ScalarTraits<Scalar>::zero());
  std::vector<Scalar> conjugates;
  conjugates.reserve(f.size());
  for (const auto& a : f.coeffs) conjugates.push_back(ScalarTraits<Scalar>::conj(a));
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < f.size(); ++j) {
      auto rho = static_cast<std::size_t>(mod_floor(f.exponents[i] - f.exponents[j], f.d));
      profile.values[rho] += f.coeffs[i] * conjugates[j];
    }
  return profile;
}

template AutocorrelationProfile<CyclotomicNumber> grouped_autocorrelation(const ExactSum&);
template AutocorrelationProfile<std::complex<double>> grouped_autocorrelation(const NumericSum&);

FlatnessResult is_flat(const ExactSum& f) {
  auto profile = grouped_autocorrelation(f);
  FlatnessResult result;
  if (profile.values[0] != CyclotomicNumber(f.mu)) {
    result.witness = 0;
    return result;
  }
  for (i64 rho = 1; rho < f.d; ++rho)
    if (!profile.values[static_cast<std::size_t>(rho)].is_zero()) {
      result.witness = rho;
      return result;
    }
  result.flat = true;
  return result;
}

FlatnessResult is_flat(const NumericSum& f, double tolerance) {
  FlatnessResult result;
  i64 worst = 0;
  for (i64 l = 0; l < f.d; ++l) {
    double dev = std::abs(std::norm(evaluate(f, l)) - f.mu);
    if (dev > result.max_deviation) {
      result.max_deviation = dev;
      worst = l;
    }
  }
  result.flat = result.max_deviation < tolerance;
  if (!result.flat) result.witness = worst;
  return result;
}

// --- scan ---------------------------------------------------------------------

FischlerScanReport fischler_scan(int M, i64 d, int trials, std::uint64_t seed, int threads) {
  if (M < 2) throw Error("fischler_scan requires M >= 2");
  if (d < static_cast<i64>(M) * M) throw Error("hypothesis violated");
  FischlerScanReport report;
  report.M = M;
  report.d = d;
  report.trials = trials;
  report.seed = seed;
  const i64 radius = (d - 1) / 4;  // 4|c| < d
  if (2 * radius + 1 < M) {
    report.vacuous = true;
    return report;
  }
  struct Outcome {
    bool flat = false;
    bool extreme = false;
    std::optional<ExactSum> sum;
  };
  std::vector<Outcome> outcomes(static_cast<std::size_t>(std::max(trials, 0)));
  static constexpr long kOrders[] = {1, 2, 3, 4, 6, 8, 12};
  parallel_for(outcomes.size(), threads, [&](std::size_t t) {
    std::seed_seq seq{seed, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(M), static_cast<std::uint64_t>(d)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<i64> pick(-radius, radius);
    std::set<i64> chosen;
    while (static_cast<int>(chosen.size()) < M) chosen.insert(pick(rng));
    std::vector<i64> c(chosen.begin(), chosen.end());
    std::shuffle(c.begin(), c.end(), rng);
    std::uniform_int_distribution<std::size_t> order_pick(0, std::size(kOrders) - 1);
    std::uniform_int_distribution<int> num(-6, 6), den(1, 6);
    std::vector<CyclotomicNumber> u;
    for (int k = 0; k < M; ++k) {
      CyclotomicNumber x(0L);
      while (x.is_zero()) {
        long order = kOrders[order_pick(rng)];
        std::vector<Rational> coeffs(static_cast<std::size_t>(order));
        for (auto& q : coeffs) {
          q = Rational(num(rng), den(rng));
          q.canonicalize();
        }
        x = CyclotomicNumber(order, coeffs);
      }
      u.push_back(std::move(x));
    }
    ExactSum g(d, c, std::move(u), Rational(1));
    FlatnessResult flat = is_flat(g);
    Outcome& out = outcomes[t];
    out.flat = flat.flat;
    if (!flat.flat) {
      auto [lo, hi] = std::minmax_element(c.begin(), c.end());
      i64 extreme = mod_floor(*hi - *lo, d);
      auto profile = grouped_autocorrelation(g);
      out.extreme = !profile.values[static_cast<std::size_t>(extreme)].is_zero();
    } else {
      out.sum = std::move(g);
    }
  });
  for (auto& o : outcomes) {
    if (o.flat) {
      report.counterexamples.push_back(*o.sum);
    } else {
      ++report.non_flat;
      if (o.extreme) ++report.witnessed_by_extreme_difference;
    }
  }
  return report;
}

// --- reduction ----------------------------------------------------------------

i64 dirichlet_bound(std::size_t N) {
  if (N >= 31) return std::numeric_limits<i64>::max();
  return i64{1} << (2 * N);
}

DirichletApproximation dirichlet_approx(const std::vector<i64>& b, i64 d, i64 Q) {
  if (d < 1) throw Error("order d must be positive");
  if (Q < dirichlet_bound(b.size())) throw Error("Q must be at least 4^N");
  for (i64 q = 1; q <= Q; ++q) {
    DirichletApproximation out;
    out.q = q;
    bool ok = true;
    for (i64 bj : b) {
      __int128 num = static_cast<__int128>(q) * bj;
      // nearest integer to num / d
      __int128 twice = 2 * num + d;
      __int128 den = 2 * static_cast<__int128>(d);
      __int128 p = twice / den;
      if ((twice % den != 0) && ((twice < 0) != (den < 0))) --p;
      __int128 diff = num - p * d;
      if (diff < 0) diff = -diff;
      if (4 * diff >= d) {
        ok = false;
        break;
      }
      out.p.push_back(static_cast<i64>(p));
    }
    if (ok) return out;
  }
  throw InternalInconsistency("dirichlet_approx: no admissible q up to Q");
}

ReductionCertificate reduce_instance(const ExactSum& input) {
  auto zero_it = std::find(input.exponents.begin(), input.exponents.end(), 0);
  if (zero_it == input.exponents.end()) throw Error("reduction requires exponent 0");
  if (gcd_with(input.exponents, input.d) != 1) throw Error("reduction requires gcd(b, d) = 1");
  if (!is_flat(input).flat) throw Error("reduction requires a flat input");

  // Put the zero exponent first.
  std::vector<std::size_t> order(input.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::size_t zero_index = static_cast<std::size_t>(zero_it - input.exponents.begin());
  std::stable_partition(order.begin(), order.end(), [&](std::size_t j) { return j == zero_index; });
  std::vector<i64> b;
  std::vector<CyclotomicNumber> a;
  for (std::size_t j : order) {
    b.push_back(input.exponents[j]);
    a.push_back(input.coeffs[j]);
  }
  ExactSum f(input.d, b, a, input.mu);

  ReductionCertificate cert;
  cert.b = b;
  cert.d = f.d;
  DirichletApproximation approx = dirichlet_approx(b, f.d, dirichlet_bound(b.size()));
  cert.q = approx.q;
  cert.p = approx.p;
  cert.e = gcd_abs(cert.q, cert.d);
  cert.q_prime = cert.q / cert.e;
  cert.d_prime = cert.d / cert.e;

  std::map<i64, std::size_t> index_of;
  std::vector<CyclotomicNumber> u;
  for (std::size_t j = 0; j < b.size(); ++j) {
    i64 cj = cert.q_prime * b[j] - cert.d_prime * cert.p[j];
    auto [it, inserted] = index_of.emplace(cj, cert.c.size());
    if (inserted) {
      cert.c.push_back(cj);
      cert.groups.emplace_back();
      u.emplace_back(0L);
    }
    cert.groups[it->second].push_back(order[j]);
    u[it->second] += a[j];
  }
  cert.g = ExactSum(cert.d_prime, cert.c, u, f.mu);

  auto fail = [](const std::string& what) { throw InternalInconsistency("reduction certificate: " + what); };
  if (cert.e != gcd_abs(cert.q, cert.d)) fail("e != gcd(q, d)");
  if (gcd_abs(cert.q_prime, cert.d_prime) != 1) fail("gcd(q', d') != 1");
  if (cert.c.front() != 0) fail("c_1 != 0");
  if (gcd_with(cert.c, cert.d_prime) != 1) fail("gcd(c, d') != 1");
  for (i64 ck : cert.c)
    if (4 * std::abs(ck) >= cert.d_prime) fail("max |c_k| >= d'/4");
  if (!is_flat(cert.g).flat) fail("reduced sum is not flat on mu_{d'}");
  if (f.size() <= 20) {
    cert.input_subset_condition = validate_definition(f).subset_sums_nonzero;
    cert.output_subset_condition = validate_definition(cert.g).subset_sums_nonzero;
    if (cert.input_subset_condition && !cert.output_subset_condition) fail("a subset sum of u vanishes");
  }
  return cert;
}

// --- numeric search -------------------------------------------------------------

double flat_objective(const std::vector<i64>& b, i64 d, double mu, const Eigen::VectorXcd& a,
                      Eigen::VectorXcd* gradient) {
  const Eigen::Index n = static_cast<Eigen::Index>(b.size());
  if (gradient) gradient->setZero(n);
  double value = 0.0;
  for (i64 l = 0; l < d; ++l) {
    std::complex<double> f = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) f += a[j] * unit_root(d, l * b[static_cast<std::size_t>(j)]);
    double r = std::norm(f) - mu;
    value += r * r;
    if (gradient)
      for (Eigen::Index j = 0; j < n; ++j)
        (*gradient)[j] += 4.0 * r * f * std::conj(unit_root(d, l * b[static_cast<std::size_t>(j)]));
  }
  return value;
}

std::string to_string(SearchVerdict v) {
  switch (v) {
    case SearchVerdict::numeric_member: return "numeric member";
    case SearchVerdict::numeric_infeasible: return "numeric infeasible";
    case SearchVerdict::unresolved: return "unresolved";
  }
  return "unresolved";
}

namespace {

// Radial projection onto {|a_j| >= floor}: a coefficient may not collapse to
// zero, which would turn the pattern into a shorter one.
void project(Eigen::VectorXcd& a, double floor) {
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    double r = std::abs(a[j]);
    if (r >= floor) continue;
    a[j] = r > 0 ? a[j] * (floor / r) : std::complex<double>(floor, 0.0);
  }
}

/// Projected gradient descent with a multiplicative step controller.
double descend(const std::vector<i64>& b, i64 d, double mu, Eigen::VectorXcd& a) {
  const double floor = std::sqrt(kCoefficientFloor * mu / static_cast<double>(b.size()));
  project(a, floor);
  Eigen::VectorXcd grad, trial;
  double value = flat_objective(b, d, mu, a, &grad);
  double step = 1.0 / (4.0 * static_cast<double>(d) * std::max(mu, 1e-3) * static_cast<double>(b.size()));
  int stalled = 0;
  for (int iter = 0; iter < 20000 && value > 1e-32; ++iter) {
    trial = a - step * grad;
    project(trial, floor);
    double next = flat_objective(b, d, mu, trial);
    if (next < value) {
      double improvement = (value - next) / value;
      a = trial;
      value = flat_objective(b, d, mu, a, &grad);
      step *= 1.5;
      stalled = improvement < 1e-12 ? stalled + 1 : 0;
      if (stalled > 50) break;
    } else {
      step *= 0.5;
      if (step < 1e-300) break;
    }
  }
  return value;
}

}  // namespace

FlatSearchResult flat_search(const std::vector<i64>& b, i64 d, double mu, int restarts, std::uint64_t seed) {
  if (d < 1) throw Error("order d must be positive");
  {
    std::set<i64> seen(b.begin(), b.end());
    if (seen.size() != b.size()) throw Error("exponents must be pairwise distinct");
  }
  FlatSearchResult best;
  best.residual = std::numeric_limits<double>::infinity();
  const Eigen::Index n = static_cast<Eigen::Index>(b.size());
  for (int r = 0; r < std::max(restarts, 1); ++r) {
    std::seed_seq seq{seed, static_cast<std::uint64_t>(r)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;
    Eigen::VectorXcd a(n);
    for (Eigen::Index j = 0; j < n; ++j) a[j] = {normal(rng), normal(rng)};
    a *= std::sqrt(mu) / a.norm();
    double value = descend(b, d, mu, a);
    ++best.restarts_run;
    if (value < best.residual) {
      best.residual = value;
      best.coeffs = a;
    }
    if (best.residual < 1e-28) break;
  }
  if (best.residual < kMemberResidual)
    best.verdict = SearchVerdict::numeric_member;
  else if (best.residual > kInfeasibleResidual)
    best.verdict = SearchVerdict::numeric_infeasible;
  else
    best.verdict = SearchVerdict::unresolved;
  return best;
}

// --- surveys --------------------------------------------------------------------

i64 sn_upper_bound(int N) {
  if (N < 1) throw Error("N must be positive");
  if (N == 1) return 1;
  i64 pow4 = dirichlet_bound(static_cast<std::size_t>(N));
  return pow4 * (static_cast<i64>(N) * N - 1);
}

std::string to_string(SurveyStatus s) {
  switch (s) {
    case SurveyStatus::member: return "member";
    case SurveyStatus::excluded: return "excluded";
    case SurveyStatus::unresolved: return "unresolved";
  }
  return "unresolved";
}

bool singleton_difference(const std::vector<i64>& pattern, i64 d, i64* residue) {
  std::map<i64, int> counts;
  for (i64 x : pattern)
    for (i64 y : pattern)
      if (x != y) ++counts[mod_floor(x - y, d)];
  for (auto [rho, count] : counts)
    if (rho != 0 && count == 1) {
      if (residue) *residue = rho;
      return true;
    }
  return false;
}

std::vector<std::vector<i64>> canonical_patterns(int N, i64 d) {
  std::vector<std::vector<i64>> out;
  const std::vector<i64> units = units_mod(d);
  auto canonical = [&](const std::vector<i64>& residues) {
    std::vector<i64> best;
    for (i64 t : units)
      for (i64 p : residues) {
        std::vector<i64> img;
        for (i64 s : residues) img.push_back(mod_floor(t * (s - p), d));
        std::sort(img.begin(), img.end());
        if (best.empty() || img < best) best = img;
      }
    return best;
  };
  auto emit = [&](std::vector<i64> residues) {
    std::sort(residues.begin(), residues.end());
    if (gcd_with(residues, d) != 1) return;
    if (canonical(residues) != residues) return;
    std::vector<i64> rep;
    for (i64 r : residues) rep.push_back(2 * r > d ? r - d : r);
    out.push_back(std::move(rep));
  };
  const i64 max_size = std::min<i64>(N, d);
  emit({0});
  if (max_size >= 2)
    for (i64 x = 1; x < d; ++x) emit({0, x});
  if (max_size >= 3)
    for (i64 x = 1; x < d; ++x)
      for (i64 y = x + 1; y < d; ++y) emit({0, x, y});
  return out;
}

namespace {

/// Exact unimodular witness on a complete residue system: prescribe
/// f(zeta_d^l) = w_l in {1, i, -1, -i} and invert the DFT.
std::optional<ExactSum> full_residue_witness(const std::vector<i64>& pattern, i64 d) {
  const long order = static_cast<long>(lcm_pos(4, d));
  const std::size_t n = pattern.size();
  std::vector<int> w(n, 0);
  for (;;) {
    std::vector<CyclotomicNumber> a;
    for (i64 bj : pattern) {
      CyclotomicNumber acc = CyclotomicNumber::zero(order);
      for (std::size_t l = 0; l < n; ++l)
        acc += CyclotomicNumber::zeta(order, (order / 4) * w[l]) *
               CyclotomicNumber::zeta(order, -(order / d) * static_cast<i64>(l) * bj);
      a.push_back(acc * CyclotomicNumber(Rational(1, static_cast<long>(d))));
    }
    ExactSum f(d, pattern, a, Rational(1));
    if (validate_definition(f).all() && is_flat(f).flat) return f;
    // next w with w_0 = 1 fixed
    std::size_t k = 1;
    while (k < n && w[k] == 3) w[k++] = 0;
    if (k >= n) return std::nullopt;
    ++w[k];
  }
}

SurveyRow survey_one(int N, i64 d, const SurveyOptions& options) {
  SurveyRow row;
  row.d = d;
  if (N >= 2 && d > sn_upper_bound(N)) {
    row.status = SurveyStatus::excluded;
    row.evidence = "d exceeds 4^N(N^2-1) = " + std::to_string(sn_upper_bound(N));
    return row;
  }
  auto patterns = canonical_patterns(N, d);
  row.patterns = static_cast<int>(patterns.size());
  if (patterns.empty()) {
    row.status = SurveyStatus::excluded;
    row.evidence = "no exponent pattern with gcd(b, d) = 1";
    return row;
  }
  std::vector<std::size_t> open;
  i64 last_residue = 0;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    i64 rho = 0;
    if (singleton_difference(patterns[i], d, &rho)) {
      ++row.excluded_exactly;
      last_residue = rho;
      continue;
    }
    if (static_cast<i64>(patterns[i].size()) == d) {
      if (auto witness = full_residue_witness(patterns[i], d)) {
        row.status = SurveyStatus::member;
        row.exact_witness = std::move(witness);
        row.evidence = "exact flat witness";
        return row;
      }
    }
    open.push_back(i);
  }
  if (open.empty()) {
    row.status = SurveyStatus::excluded;
    std::ostringstream os;
    os << "every pattern has a singleton autocorrelation class (e.g. rho = " << last_residue << ")";
    row.evidence = os.str();
    return row;
  }
  int unresolved = 0;
  for (std::size_t i : open) {
    std::uint64_t seed = options.seed ^ (static_cast<std::uint64_t>(d) * 0x9E3779B97F4A7C15ULL + i);
    FlatSearchResult found = flat_search(patterns[i], d, 1.0, options.restarts, seed);
    if (row.best_residual < 0 || found.residual < row.best_residual) row.best_residual = found.residual;
    if (found.verdict == SearchVerdict::numeric_member) {
      std::vector<std::complex<double>> coeffs(found.coeffs.data(), found.coeffs.data() + found.coeffs.size());
      NumericSum f(d, patterns[i], coeffs, 1.0);
      row.numeric_witness_valid = validate_definition(f, 1e-9).all();
      row.numeric_pattern = patterns[i];
      row.best_residual = found.residual;
      row.status = SurveyStatus::member;
      row.evidence = "numeric witness";
      return row;
    }
    if (found.verdict == SearchVerdict::numeric_infeasible)
      ++row.numeric_infeasible;
    else
      ++unresolved;
  }
  row.status = SurveyStatus::unresolved;
  std::ostringstream os;
  os << row.numeric_infeasible << " pattern(s) numerically infeasible, " << unresolved << " unresolved";
  row.evidence = os.str();
  return row;
}

}  // namespace

std::vector<SurveyRow> sn_survey(int N, i64 d_max, const SurveyOptions& options) {
  if (N > 3) throw Error("survey too large");
  if (N < 1) throw Error("N must be positive");
  const i64 d_min = std::max<i64>(1, options.d_min);
  std::vector<SurveyRow> rows(static_cast<std::size_t>(std::max<i64>(0, d_max - d_min + 1)));
  parallel_for(rows.size(), options.threads,
               [&](std::size_t i) { rows[i] = survey_one(N, d_min + static_cast<i64>(i), options); });
  return rows;
}

}  // namespace cyclolab::flatsums
