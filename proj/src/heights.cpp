#include "cyclolab/heights.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "cyclolab/kummer.hpp"
#include "cyclolab/numtheory.hpp"

namespace cyclolab::heights {

namespace {

using cld = std::complex<long double>;

cld eval_ld(const std::vector<long double>& c, cld z) {
  cld acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
  return acc;
}

void require_degree(const QPoly& p) {
  if (p.is_zero()) throw Error("zero polynomial");
  if (p.degree() < 1) throw Error("constant polynomial has no roots");
  if (p.degree() > kMaxDegree) throw Error("degree exceeds 64");
}

std::vector<i64> positive_divisors(const BigInt& n) {
  if (!n.fits_slong_p()) throw Error("leading coefficient too large");
  return divisors(std::abs(n.get_si()));
}

// Integer polynomial a * prod (x - r) when it has integral coefficients up to
// rounding; empty otherwise.
std::optional<QPoly> integer_candidate(const std::vector<std::complex<double>>& roots, long a) {
  std::vector<std::complex<double>> c = {std::complex<double>(static_cast<double>(a))};
  for (auto r : roots) {
    std::vector<std::complex<double>> next(c.size() + 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= c[i] * r;
    }
    c = std::move(next);
  }
  std::vector<Rational> q;
  for (auto x : c) {
    if (std::abs(x.imag()) > 1e-6 || std::abs(x.real()) > 1e15) return std::nullopt;
    double rounded = std::round(x.real());
    if (std::abs(rounded - x.real()) > 1e-6 * std::max(1.0, std::abs(x.real()))) return std::nullopt;
    q.emplace_back(static_cast<long>(rounded));
  }
  return QPoly(std::move(q));
}

bool divides(const QPoly& f, const QPoly& p) { return f.degree() >= 1 && (p % f).is_zero(); }

}  // namespace

double fujiwara_bound(const QPoly& p) {
  require_degree(p);
  const int n = p.degree();
  const double lc = std::abs(p.leading().get_d());
  double best = 0.0;
  for (int i = 1; i <= n; ++i) {
    double c = std::abs(p.coeff(n - i).get_d()) / lc;
    if (i == n) c /= 2;
    best = std::max(best, std::pow(c, 1.0 / i));
  }
  return 2 * best;
}

std::vector<std::complex<double>> polynomial_roots(const QPoly& p) {
  require_degree(p);
  const int n = p.degree();
  const Rational lc = p.leading();
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -Rational(p.coeff(i) / lc).get_d();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw InternalInconsistency("companion eigenvalue solver failed");

  std::vector<long double> c, dc;
  for (int i = 0; i <= n; ++i) c.push_back(static_cast<long double>(Rational(p.coeff(i) / lc).get_d()));
  for (int i = 1; i <= n; ++i) dc.push_back(static_cast<long double>(i) * c[static_cast<std::size_t>(i)]);

  std::vector<std::complex<double>> roots;
  for (int i = 0; i < n; ++i) {
    cld z(solver.eigenvalues()[i].real(), solver.eigenvalues()[i].imag());
    for (int it = 0; it < 8; ++it) {
      cld d = eval_ld(dc, z);
      if (std::abs(d) == 0) break;
      cld step = eval_ld(c, z) / d;
      z -= step;
      if (std::abs(step) <= 1e-18L * std::max<long double>(1, std::abs(z))) break;
    }
    roots.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  }
  const double bound = fujiwara_bound(p);
  for (auto r : roots)
    if (std::abs(r) > bound * (1 + 1e-9)) throw InternalInconsistency("root outside the Fujiwara radius");
  std::sort(roots.begin(), roots.end(), [](auto a, auto b) {
    if (std::abs(a.real() - b.real()) > 1e-9) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

IrreducibilityProbe probe_irreducibility(const QPoly& raw) {
  QPoly p = raw.primitive();
  IrreducibilityProbe probe;
  const int n = p.degree();
  if (n <= 1) return probe;
  auto roots = polynomial_roots(p);
  auto lead = positive_divisors(p.leading().get_num());
  for (auto r : roots) {
    if (std::abs(r.imag()) > 1e-7) continue;
    for (long a : lead) {
      auto f = integer_candidate({r}, a);
      if (f && divides(*f, p)) probe.rational_root = true;
    }
  }
  if (p.coeff(0) == 0) probe.rational_root = true;
  if (n >= 4)
    for (std::size_t i = 0; i < roots.size() && !probe.quadratic_factor; ++i)
      for (std::size_t j = i + 1; j < roots.size() && !probe.quadratic_factor; ++j)
        for (long a : lead) {
          auto f = integer_candidate({roots[i], roots[j]}, a);
          if (f && divides(*f, p)) {
            probe.quadratic_factor = true;
            break;
          }
        }
  if (n >= 6 && n <= 24)
    for (std::size_t i = 0; i < roots.size() && !probe.cubic_factor; ++i)
      for (std::size_t j = i + 1; j < roots.size() && !probe.cubic_factor; ++j)
        for (std::size_t k = j + 1; k < roots.size() && !probe.cubic_factor; ++k)
          for (long a : lead) {
            auto f = integer_candidate({roots[i], roots[j], roots[k]}, a);
            if (f && divides(*f, p)) {
              probe.cubic_factor = true;
              break;
            }
          }
  return probe;
}

AlgebraicNumber::AlgebraicNumber(const QPoly& p, int index) : root_index(index) {
  require_degree(p);
  minpoly = p.primitive();
  if (index < 0 || index >= minpoly.degree()) throw Error("root index out of range");
  if (probe_irreducibility(minpoly).reducible()) throw Error("polynomial is reducible");
}

AlgebraicNumber AlgebraicNumber::rational(const Rational& q) {
  return AlgebraicNumber(QPoly({-q, Rational(1)}), 0);
}

std::complex<double> AlgebraicNumber::value() const {
  return polynomial_roots(minpoly)[static_cast<std::size_t>(root_index)];
}

double log_mahler_measure(const QPoly& p) {
  require_degree(p);
  double acc = std::log(std::abs(p.leading().get_d()));
  for (auto r : polynomial_roots(p)) acc += std::log(std::max(1.0, std::abs(r)));
  return acc;
}

double weil_height(const QPoly& p) {
  require_degree(p);
  QPoly q = p.primitive();
  return log_mahler_measure(q) / q.degree();
}

double weil_height(const AlgebraicNumber& alpha) { return weil_height(alpha.minpoly); }

namespace {

// Power sums s_1..s_count of the roots of a monic polynomial (Newton).
std::vector<Rational> power_sums(const QPoly& monic, int count) {
  const int n = monic.degree();
  // e-form: x^n + c_{n-1} x^{n-1} + ... ; s_k = -(k c_{n-k} + sum_{i=1}^{k-1} c_{n-i} s_{k-i})
  std::vector<Rational> s(static_cast<std::size_t>(count) + 1);
  for (int k = 1; k <= count; ++k) {
    Rational acc = 0;
    if (k <= n) acc = k * monic.coeff(n - k);
    for (int i = 1; i < k && i <= n; ++i) acc += monic.coeff(n - i) * s[static_cast<std::size_t>(k - i)];
    s[static_cast<std::size_t>(k)] = -acc;
  }
  return s;
}

// Monic polynomial of degree n whose roots have power sums t_1..t_n.
QPoly from_power_sums(const std::vector<Rational>& t, int n) {
  std::vector<Rational> e(static_cast<std::size_t>(n) + 1);
  e[0] = 1;
  for (int k = 1; k <= n; ++k) {
    Rational acc = 0;
    for (int i = 1; i <= k; ++i) {
      Rational term = e[static_cast<std::size_t>(k - i)] * t[static_cast<std::size_t>(i)];
      acc += (i % 2 == 1) ? term : Rational(-term);
    }
    e[static_cast<std::size_t>(k)] = acc / k;
  }
  std::vector<Rational> coeffs(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) coeffs[static_cast<std::size_t>(n - k)] = (k % 2 == 0) ? e[static_cast<std::size_t>(k)] : Rational(-e[static_cast<std::size_t>(k)]);
  return QPoly(std::move(coeffs));
}

}  // namespace

AlgebraicNumber power_transform(const AlgebraicNumber& alpha, long n) {
  if (n == 0) throw Error("exponent must be nonzero");
  QPoly p = alpha.minpoly;
  const bool is_zero = p.degree() == 1 && p.coeff(0) == 0;
  if (is_zero && n < 0) throw Error("zero has no negative powers");
  const std::complex<double> target = std::pow(alpha.value(), static_cast<double>(n));
  if (n < 0) {
    std::vector<Rational> rev(p.coeffs().rbegin(), p.coeffs().rend());
    p = QPoly(std::move(rev));
    n = -n;
  }
  const int deg = p.degree();
  QPoly monic = p.monic();
  auto s = power_sums(monic, deg * static_cast<int>(n));
  std::vector<Rational> t(static_cast<std::size_t>(deg) + 1);
  for (int k = 1; k <= deg; ++k) t[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(k * n)];
  QPoly charpoly = from_power_sums(t, deg);
  QPoly minimal = squarefree_part(charpoly).primitive();
  auto roots = polynomial_roots(minimal);
  int best = 0;
  for (std::size_t i = 1; i < roots.size(); ++i)
    if (std::abs(roots[i] - target) < std::abs(roots[static_cast<std::size_t>(best)] - target)) best = static_cast<int>(i);
  AlgebraicNumber out = AlgebraicNumber::rational(0);
  out.minpoly = minimal;
  out.root_index = best;
  return out;
}

bool is_root_of_unity(const AlgebraicNumber& alpha) {
  const QPoly& p = alpha.minpoly;
  if (p.leading() != 1 || p.degree() < 1) return false;
  const i64 deg = p.degree();
  for (i64 k = 1; k <= 2 * deg * deg + 2; ++k) {
    if (euler_phi(k) > deg) continue;
    QPoly xk = QPoly::monomial(1, static_cast<int>(k)) - QPoly({Rational(1)});
    if ((xk % p).is_zero()) return true;
  }
  return false;
}

RadicalHeight radical_height(const Rational& a, long n) {
  if (a <= 0) throw Error("radicand must be a positive rational");
  if (n < 1) throw Error("root index must be positive");
  RadicalHeight out;
  BigInt num = a.get_num(), den = a.get_den();
  out.height = std::log(std::max(num, den).get_d()) / static_cast<double>(n);
  if (n > kMaxDegree) return out;
  // Capelli: x^n - a is irreducible iff a is not a p-th power for any prime p | n.
  bool irreducible = true;
  for (auto [p, k] : factorize(n))
    if (kummer::rational_root(a, p)) irreducible = false;
  if (!irreducible) return out;
  std::vector<Rational> c(static_cast<std::size_t>(n) + 1);
  c[0] = -Rational(num);
  c[static_cast<std::size_t>(n)] = Rational(den);
  double check = weil_height(QPoly(std::move(c)));
  if (std::abs(check - out.height) > 1e-9) throw InternalInconsistency("radical height disagrees with the polynomial height");
  out.cross_checked = true;
  return out;
}

}  // namespace cyclolab::heights
