#include "cyclolab/kummer.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "cyclolab/lattice.hpp"

namespace cyclolab::kummer {

namespace {

namespace mp = boost::multiprecision;
using Float = mp::number<mp::cpp_bin_float<80>, mp::et_off>;

std::vector<std::pair<i64, int>> factor_big(const BigInt& n) {
  if (!n.fits_slong_p()) throw Error("rational too large to factor");
  return factorize(n.get_si());
}

}  // namespace

BigInt squarefree_part(const Rational& a) {
  if (a == 0) throw Error("zero has no squarefree part");
  BigInt s = 1;
  std::map<i64, int> exps;
  for (auto [p, e] : factor_big(abs(a.get_num()))) exps[p] += e;
  for (auto [p, e] : factor_big(a.get_den())) exps[p] += e;
  for (auto [p, e] : exps)
    if (e % 2) s *= static_cast<long>(p);
  return a < 0 ? BigInt(-s) : s;
}

BigInt quadratic_conductor(const BigInt& s) {
  BigInt r = s % 4;
  if (r < 0) r += 4;
  return r == 1 ? BigInt(abs(s)) : BigInt(4 * abs(s));
}

bool sqrt_in_cyclotomic(const Rational& a, i64 m) {
  if (a == 0) throw Error("square root of zero is not a unit");
  if (m < 1) throw Error("cyclotomic order must be positive");
  BigInt s = squarefree_part(a);
  if (s == 1) return true;
  BigInt cond = quadratic_conductor(s);
  return BigInt(static_cast<long>(m)) % cond == 0;
}

std::optional<Rational> rational_root(const Rational& a, i64 n) {
  if (n < 1) throw Error("root index must be positive");
  if (a < 0 && n % 2 == 0) return std::nullopt;
  BigInt num = abs(a.get_num()), den = a.get_den();
  BigInt rn, rd;
  int exact_n = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(n));
  int exact_d = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(n));
  if (!exact_n || !exact_d) return std::nullopt;
  Rational r(a < 0 ? BigInt(-rn) : rn, rd);
  r.canonicalize();
  return r;
}

bool root_in_cyclotomic(const Rational& a, i64 n, i64 m) {
  if (a == 0) throw Error("zero is not a unit");
  if (n < 1 || m < 1) throw Error("root index and cyclotomic order must be positive");
  if (n == 1) return true;
  auto b2 = rational_root(a * a, n);
  if (!b2) return false;
  BigInt s = squarefree_part(*b2);
  const i64 base = lcm_pos(m, 2 * n);
  BigInt disc = s == 1 ? BigInt(1) : (quadratic_conductor(s) == abs(s) ? s : BigInt(4 * s));
  if (s != 1 && BigInt(static_cast<long>(base)) % abs(disc) != 0) return false;
  // zeta = exp(2 pi i u / 2n) with zeta^n = sign(a)
  for (i64 u = a > 0 ? 0 : 1; u < 2 * n; u += 2) {
    bool fixed = true;
    for (i64 t = 1 + m; t < base + 1 && fixed; t += m) {
      if (gcd_abs(t, base) != 1) continue;
      int chi = mpz_kronecker(disc.get_mpz_t(), BigInt(static_cast<long>(t)).get_mpz_t());
      i64 phase = mod_floor(u * (t - 1), 2 * n);
      int zeta_value = phase == 0 ? 1 : (phase == n ? -1 : 0);
      fixed = zeta_value != 0 && chi * zeta_value == 1;
    }
    if (fixed) return true;
  }
  return false;
}

Rank1Failure rank1_failure(const Rational& a, i64 d, i64 m) {
  if (a == 0) throw Error("generator must be nonzero");
  if (a == 1 || a == -1) throw Error("torsion generator");
  if (d < 1 || m < 1) throw Error("d and m must be positive");
  if (m % d != 0) throw Error("d must divide m");
  Rank1Failure out;
  for (auto [p, k] : factorize(d)) {
    if (p == 2) continue;
    i64 best = 1, pe = 1;
    for (int t = 1; t <= k; ++t) {
      pe *= p;
      if (rational_root(a, pe)) best = pe;
    }
    out.odd_part *= best;
  }
  const int v = valuation(d, 2);
  for (int j = v; j >= 1; --j) {
    i64 pj = i64{1} << j;
    if (root_in_cyclotomic(a, pj, m)) {
      out.two_part = pj;
      break;
    }
  }
  out.c = out.odd_part * out.two_part;
  out.degree = d / out.c;
  return out;
}

std::vector<std::vector<i64>> exponent_matrix(const std::vector<Rational>& generators, std::vector<i64>* primes_out) {
  std::vector<std::map<i64, i64>> per;
  std::vector<i64> primes;
  for (const auto& g : generators) {
    if (g <= 0) throw Error("generators must be positive rationals");
    std::map<i64, i64> e;
    for (auto [p, k] : factor_big(g.get_num())) e[p] += k;
    for (auto [p, k] : factor_big(g.get_den())) e[p] -= k;
    for (auto& [p, k] : e) primes.push_back(p);
    per.push_back(std::move(e));
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  std::vector<std::vector<i64>> rows;
  for (auto& e : per) {
    std::vector<i64> row;
    for (i64 p : primes) row.push_back(e.count(p) ? e[p] : 0);
    rows.push_back(std::move(row));
  }
  if (primes_out) *primes_out = primes;
  return rows;
}

namespace {

std::size_t rank_over_q(std::vector<std::vector<Rational>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::size_t rank_mod_p(std::vector<std::vector<i64>> rows, i64 p) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (auto& row : rows)
    for (auto& x : row) x = mod_floor(x, p);
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    i64 x = 0, y = 0;
    ext_gcd(rows[rank][c], p, x, y);
    i64 inv = mod_floor(x, p);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      i64 f = mod_floor(rows[r][c] * inv, p);
      for (std::size_t k = c; k < cols; ++k) rows[r][k] = mod_floor(rows[r][k] - f * rows[rank][k], p);
    }
    ++rank;
  }
  return rank;
}

}  // namespace

bool multiplicatively_independent(const std::vector<Rational>& generators) {
  auto rows = exponent_matrix(generators);
  std::vector<std::vector<Rational>> q;
  for (auto& r : rows) {
    std::vector<Rational> qr;
    for (i64 x : r) qr.emplace_back(static_cast<long>(x));
    q.push_back(std::move(qr));
  }
  return rank_over_q(std::move(q)) == generators.size();
}

i64 TowerDegrees::order() const {
  i64 o = 1;
  for (i64 s : shape) o *= s;
  return o;
}

TowerDegrees tower_degrees(const std::vector<Rational>& generators, const std::vector<i64>& d, i64 m) {
  if (generators.size() != d.size()) throw Error("generator and denominator counts differ");
  if (!multiplicatively_independent(generators)) throw Error("generators must be multiplicatively independent");
  TowerDegrees out;
  for (std::size_t l = 0; l < generators.size(); ++l) {
    auto r = rank1_failure(generators[l], d[l], m);
    out.c.push_back(r.c);
    out.shape.push_back(r.degree);
  }
  std::vector<i64> primes;
  for (i64 s : out.shape)
    for (auto [p, k] : factorize(s)) primes.push_back(p);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (i64 p : primes) {
    std::vector<std::size_t> S;
    for (std::size_t l = 0; l < out.shape.size(); ++l)
      if (out.shape[l] % p == 0) S.push_back(l);
    if (S.size() <= 1) continue;
    if (p != 2) {
      std::vector<Rational> reduced;
      for (std::size_t l : S) {
        i64 pe = 1;
        for (int v = valuation(out.c[l], p); v > 0; --v) pe *= p;
        reduced.push_back(*rational_root(generators[l], pe));
      }
      if (rank_mod_p(exponent_matrix(reduced), p) != S.size()) throw Error("entangled case unsupported");
      continue;
    }
    if (S.size() > 16) throw Error("entangled case unsupported");
    for (std::size_t l : S)
      if (out.c[l] % 2 == 0) throw Error("entangled case unsupported");
    for (std::uint32_t mask = 1; mask < (1U << S.size()); ++mask) {
      if (std::popcount(mask) < 2) continue;
      Rational prod = 1;
      for (std::size_t i = 0; i < S.size(); ++i)
        if (mask & (1U << i)) prod *= generators[S[i]];
      if (sqrt_in_cyclotomic(prod, m)) throw Error("entangled case unsupported");
    }
  }
  return out;
}

std::string to_string(OracleVerdict v) {
  switch (v) {
    case OracleVerdict::yes: return "true";
    case OracleVerdict::no: return "false";
    case OracleVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

BigInt to_bigint(const Float& x) {
  mp::cpp_int i = static_cast<mp::cpp_int>(mp::round(x));
  return BigInt(i.str());
}

Float to_float(const Rational& q) { return Float(q.get_num().get_str()) / Float(q.get_den().get_str()); }

struct Attempt {
  bool found = false;
  bool near_miss = false;
  OracleResult result;
};

Attempt run_oracle(const Rational& a, i64 e, i64 m, double scale) {
  Attempt out;
  const std::size_t phi = static_cast<std::size_t>(euler_phi(m));
  const Float pi = 4 * mp::atan(Float(1));
  const Float S(scale);
  const Float b = mp::pow(to_float(abs(a)), Float(1) / Float(e));
  std::vector<Float> zr(phi), zi(phi);
  for (std::size_t i = 0; i < phi; ++i) {
    Float ang = 2 * pi * Float(static_cast<long long>(i)) / Float(m);
    zr[i] = mp::cos(ang);
    zi[i] = mp::sin(ang);
  }
  for (i64 j = a > 0 ? 0 : 1; j < 2 * e; j += 2) {
    Float ang = pi * Float(j) / Float(e);
    Float br = b * mp::cos(ang), bi = b * mp::sin(ang);
    IntMatrix basis(phi + 1, IntRow(phi + 3));
    basis[0][0] = 1;
    basis[0][phi + 1] = to_bigint(S * br);
    basis[0][phi + 2] = to_bigint(S * bi);
    for (std::size_t i = 0; i < phi; ++i) {
      basis[i + 1][i + 1] = 1;
      basis[i + 1][phi + 1] = to_bigint(-S * zr[i]);
      basis[i + 1][phi + 2] = to_bigint(-S * zi[i]);
    }
    IntMatrix reduced = lll_reduce(std::move(basis));
    for (const auto& w : reduced) {
      if (w[0] == 0) continue;
      Float w0(w[0].get_str());
      Float rr = w0 * br, ri = w0 * bi;
      for (std::size_t i = 0; i < phi; ++i) {
        Float wi(w[i + 1].get_str());
        rr -= wi * zr[i];
        ri -= wi * zi[i];
      }
      Float residual = mp::sqrt(rr * rr + ri * ri);
      if (residual >= Float(1e-20)) continue;
      std::vector<Rational> v(phi);
      for (std::size_t i = 0; i < phi; ++i) {
        v[i] = Rational(w[i + 1], w[0]);
        v[i].canonicalize();
      }
      CyclotomicNumber root(static_cast<long>(m), v);
      if (root.pow(e) == CyclotomicNumber(a)) {
        out.found = true;
        out.result.verdict = OracleVerdict::yes;
        out.result.root = root;
        out.result.v = v;
        out.result.candidate = static_cast<int>(j);
        out.result.scale_used = scale;
        return out;
      }
      if (residual < Float(1e-5) / S) out.near_miss = true;
    }
  }
  return out;
}

}  // namespace

OracleResult root_membership_oracle(const Rational& a, i64 e, i64 m, double scale) {
  if (a == 0) throw Error("zero is not a unit");
  if (e < 1 || m < 1) throw Error("root index and cyclotomic order must be positive");
  if (e * euler_phi(m) > 64) throw Error("oracle limited to e * phi(m) <= 64");
  Attempt first = run_oracle(a, e, m, scale);
  if (first.found) return first.result;
  if (first.near_miss && scale < 1e40) {
    Attempt second = run_oracle(a, e, m, 1e40);
    if (second.found) return second.result;
    OracleResult r;
    r.verdict = second.near_miss ? OracleVerdict::inconclusive : OracleVerdict::no;
    r.scale_used = 1e40;
    return r;
  }
  OracleResult r;
  r.verdict = first.near_miss ? OracleVerdict::inconclusive : OracleVerdict::no;
  r.scale_used = scale;
  return r;
}

std::optional<i64> oracle_failure(const Rational& a, i64 d, i64 m) {
  auto divs = divisors(d);
  for (auto it = divs.rbegin(); it != divs.rend(); ++it) {
    auto r = root_membership_oracle(a, *it, m);
    if (r.verdict == OracleVerdict::inconclusive) return std::nullopt;
    if (r.verdict == OracleVerdict::yes) return *it;
  }
  return 1;
}

}  // namespace cyclolab::kummer
