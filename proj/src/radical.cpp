#include "cyclolab/radical.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "cyclolab/kummer.hpp"

namespace cyclolab::radical {

namespace {

i64 symmetric_mod(i64 a, i64 m) {
  i64 r = mod_floor(a, m);
  return 2 * r > m ? r - m : r;
}

// exp(2 pi i e / n) for e in [0, n).
std::vector<std::complex<double>> unit_roots(i64 n) {
  std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
  for (i64 e = 0; e < n; ++e) {
    double a = 2 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(n);
    out[static_cast<std::size_t>(e)] = {std::cos(a), std::sin(a)};
  }
  return out;
}

i64 lcm_of(const std::vector<i64>& v) {
  i64 l = 1;
  for (i64 x : v) l = lcm_pos(l, x);
  return l;
}

void require_orbit(i64 size) {
  if (size > kMaxOrbit) throw Error("orbit too large");
}

}  // namespace

RadicalContext RadicalContext::make(std::vector<Rational> generators, std::vector<i64> d, i64 D,
                                    std::optional<std::vector<i64>> failures) {
  if (generators.size() != d.size()) throw Error("one radical denominator per generator");
  if (D < 1) throw Error("cyclotomic order D must be positive");
  for (const auto& a : generators)
    if (a <= 0 || a == 1) throw Error("generators must be positive rationals other than 1");
  for (i64 x : d)
    if (x < 1) throw Error("radical denominators must be positive");
  if (!generators.empty() && !kummer::multiplicatively_independent(generators))
    throw Error("generators must be multiplicatively independent");
  RadicalContext ctx;
  ctx.generators = std::move(generators);
  ctx.d = std::move(d);
  ctx.D = lcm_pos(D, lcm_of(ctx.d));
  if (failures) {
    if (failures->size() != ctx.d.size()) throw Error("one Kummer failure per generator");
    for (std::size_t l = 0; l < ctx.d.size(); ++l) {
      i64 c = (*failures)[l];
      if (c < 1 || ctx.d[l] % c != 0) throw Error("failure c_l must divide d_l");
    }
    ctx.c = *failures;
    ctx.user_failures = true;
  } else {
    for (std::size_t l = 0; l < ctx.d.size(); ++l)
      ctx.c.push_back(kummer::rank1_failure(ctx.generators[l], ctx.d[l], ctx.D).c);
  }
  return ctx;
}

std::vector<i64> RadicalContext::kummer_orders() const {
  std::vector<i64> out;
  for (std::size_t l = 0; l < d.size(); ++l) out.push_back(d[l] / c[l]);
  return out;
}

i64 RadicalContext::group_order() const {
  i64 o = 1;
  for (i64 n : kummer_orders()) {
    o *= n;
    if (o > kMaxOrbit * 1000) return o;
  }
  return o;
}

std::vector<i64> RadicalContext::element(i64 index) const {
  auto n = kummer_orders();
  std::vector<i64> r(n.size());
  for (std::size_t l = n.size(); l-- > 0;) {
    r[l] = index % n[l];
    index /= n[l];
  }
  return r;
}

bool RadicalContext::operator==(const RadicalContext& o) const {
  return generators == o.generators && d == o.d && c == o.c && D == o.D;
}

RadicalSum::RadicalSum(RadicalContext ctx, std::vector<RadicalTerm> ts) : context(std::move(ctx)), terms(std::move(ts)) {
  for (auto& term : terms) {
    if (term.k.size() != context.rank()) throw Error("exponent vector length must equal the number of generators");
    if (context.D % term.coeff.order() != 0) throw Error("coefficient order must divide D");
    term.coeff = term.coeff.lift(context.D);
  }
}

double RadicalSum::radical_value(const std::vector<i64>& k) const {
  double log_value = 0.0;
  for (std::size_t l = 0; l < k.size(); ++l) {
    if (k[l] == 0) continue;
    log_value += static_cast<double>(k[l]) / static_cast<double>(context.d[l]) * std::log(context.generators[l].get_d());
  }
  return std::exp(log_value);
}

std::complex<double> RadicalSum::term_value(std::size_t j) const {
  return terms[j].coeff.embed() * radical_value(terms[j].k);
}

std::complex<double> RadicalSum::value() const {
  std::complex<double> acc = 0;
  for (std::size_t j = 0; j < terms.size(); ++j) acc += term_value(j);
  return acc;
}

std::string RadicalSum::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& term : terms) {
    CyclotomicNumber a = term.coeff.normalized();
    for (long i = 0; i < a.order(); ++i) {
      const Rational& ci = a.coeffs()[static_cast<std::size_t>(i)];
      if (ci == 0) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << format_rational(ci) << ")";
      if (i > 0) os << " * z" << a.order() << "^" << i;
      for (std::size_t l = 0; l < term.k.size(); ++l) {
        if (term.k[l] == 0) continue;
        const Rational& g = context.generators[l];
        std::string base = format_rational(g);
        if (g.get_den() != 1) base = "(" + base + ")";
        os << " * " << base << "^(" << term.k[l] << "/" << context.d[l] << ")";
      }
    }
  }
  if (first) return "0";
  return os.str();
}

bool operator==(const RadicalSum& a, const RadicalSum& b) {
  if (!(a.context == b.context)) return false;
  RadicalSum na = normalize_terms(a), nb = normalize_terms(b);
  if (na.terms.size() != nb.terms.size()) return false;
  for (const auto& ta : na.terms) {
    auto it = std::find_if(nb.terms.begin(), nb.terms.end(), [&](const RadicalTerm& tb) { return tb.k == ta.k; });
    if (it == nb.terms.end() || it->coeff != ta.coeff) return false;
  }
  return true;
}

namespace {

struct ParsedFactor {
  bool radical = false;
  Rational base;
  i64 num = 0, den = 1;
};

std::string strip_parens(const std::string& s) {
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') return s.substr(1, s.size() - 2);
  return s;
}

// Splits at top-level occurrences of the separator characters; keeps a leading
// sign with its piece for '+'/'-'.
std::vector<std::string> split_terms(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    bool sign = (ch == '+' || ch == '-') && depth == 0 && !cur.empty() && cur.back() != '*' && cur.back() != '^';
    if (sign) {
      out.push_back(cur);
      cur.clear();
    }
    if (depth < 0) throw Error("unbalanced parentheses in radical sum");
    cur.push_back(ch);
  }
  if (depth != 0) throw Error("unbalanced parentheses in radical sum");
  out.push_back(cur);
  return out;
}

std::vector<std::string> split_factors(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == '*' && depth == 0) {
      out.push_back(cur);
      cur.clear();
      continue;
    }
    cur.push_back(ch);
  }
  out.push_back(cur);
  return out;
}

i64 parse_i64(const std::string& s) {
  std::string t = strip_parens(s);
  std::size_t used = 0;
  i64 v = 0;
  try {
    v = std::stoll(t, &used);
  } catch (const std::exception&) {
    throw Error("malformed integer '" + s + "' in radical sum");
  }
  if (used != t.size()) throw Error("malformed integer '" + s + "' in radical sum");
  return v;
}

}  // namespace

RadicalSum parse_radical_sum(const std::string& raw, i64 min_D, std::optional<std::vector<i64>> failures) {
  std::string s;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw Error("empty radical sum");

  struct Term {
    Rational scalar = 1;
    std::vector<std::pair<i64, i64>> zetas;  // (order, power)
    std::vector<ParsedFactor> radicals;
  };
  std::vector<Term> parsed;
  std::vector<Rational> generators;
  std::vector<i64> dens;
  i64 D = std::max<i64>(min_D, 1);

  for (std::string piece : split_terms(s)) {
    Term term;
    if (!piece.empty() && (piece[0] == '+' || piece[0] == '-')) {
      if (piece[0] == '-') term.scalar = -1;
      piece.erase(0, 1);
    }
    if (piece.empty()) throw Error("empty term in radical sum");
    for (const std::string& f : split_factors(piece)) {
      if (f.empty()) throw Error("empty factor in radical sum");
      if (f[0] == 'z') {
        auto caret = f.find('^');
        i64 order = parse_i64(f.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
        i64 power = caret == std::string::npos ? 1 : parse_i64(f.substr(caret + 1));
        if (order < 1) throw Error("root of unity order must be positive");
        term.zetas.emplace_back(order, power);
        D = lcm_pos(D, order);
        continue;
      }
      // base^(num/den) or a rational
      std::size_t caret = std::string::npos;
      int depth = 0;
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == '(') ++depth;
        if (f[i] == ')') --depth;
        if (f[i] == '^' && depth == 0) {
          caret = i;
          break;
        }
      }
      if (caret == std::string::npos) {
        term.scalar *= parse_rational(strip_parens(f));
        continue;
      }
      ParsedFactor rad;
      rad.radical = true;
      rad.base = parse_rational(strip_parens(f.substr(0, caret)));
      std::string ex = strip_parens(f.substr(caret + 1));
      auto slash = ex.find('/');
      rad.num = parse_i64(ex.substr(0, slash));
      rad.den = slash == std::string::npos ? 1 : parse_i64(ex.substr(slash + 1));
      if (rad.den < 1) throw Error("radical denominator must be positive");
      auto it = std::find(generators.begin(), generators.end(), rad.base);
      if (it == generators.end()) {
        generators.push_back(rad.base);
        dens.push_back(rad.den);
      } else {
        auto l = static_cast<std::size_t>(it - generators.begin());
        dens[l] = lcm_pos(dens[l], rad.den);
      }
      term.radicals.push_back(rad);
    }
    parsed.push_back(std::move(term));
  }

  RadicalContext ctx = RadicalContext::make(generators, dens, D, std::move(failures));
  std::vector<RadicalTerm> terms;
  for (const auto& term : parsed) {
    CyclotomicNumber coeff(term.scalar);
    for (auto [order, power] : term.zetas) coeff *= CyclotomicNumber::zeta(order, power);
    std::vector<i64> k(generators.size(), 0);
    for (const auto& rad : term.radicals) {
      auto l = static_cast<std::size_t>(std::find(generators.begin(), generators.end(), rad.base) - generators.begin());
      k[l] += rad.num * (ctx.d[l] / rad.den);
    }
    terms.push_back({coeff.lift(ctx.D), std::move(k)});
  }
  return RadicalSum(std::move(ctx), std::move(terms));
}

GaloisElement GaloisElement::identity(const RadicalContext& ctx) { return GaloisElement{1, std::vector<i64>(ctx.rank(), 0)}; }

GaloisElement GaloisElement::compose(const GaloisElement& other, const RadicalContext& ctx) const {
  auto n = ctx.kummer_orders();
  if (r.size() != n.size() || other.r.size() != n.size()) throw Error("r must have one entry per generator");
  GaloisElement out;
  out.t = mod_floor(t * other.t, ctx.D);
  if (ctx.D == 1) out.t = 1;
  out.r.resize(n.size());
  for (std::size_t l = 0; l < n.size(); ++l) out.r[l] = mod_floor(r[l] + t * other.r[l], n[l]);
  return out;
}

std::string GaloisElement::to_string() const {
  std::ostringstream os;
  os << "(t=" << t << ", r=(";
  for (std::size_t l = 0; l < r.size(); ++l) os << (l ? "," : "") << r[l];
  os << "))";
  return os.str();
}

RadicalSum apply_galois(const GaloisElement& sigma, const RadicalSum& x) {
  const auto& ctx = x.context;
  if (gcd_abs(sigma.t, ctx.D) != 1) throw Error("t must be coprime to D");
  if (sigma.r.size() != ctx.rank()) throw Error("r must have one entry per generator");
  auto n = ctx.kummer_orders();
  const i64 L = lcm_of(n);
  std::vector<RadicalTerm> out;
  out.reserve(x.terms.size());
  for (const auto& term : x.terms) {
    i64 e = 0;
    for (std::size_t l = 0; l < n.size(); ++l)
      e = mod_floor(e + mod_floor(sigma.r[l], n[l]) * mod_floor(term.k[l], n[l]) % n[l] * (L / n[l]), L);
    CyclotomicNumber a = ctx.D == 1 ? term.coeff : term.coeff.galois_conjugate(mod_floor(sigma.t, ctx.D));
    if (e != 0) a = (a * CyclotomicNumber::zeta(L, e)).lift(ctx.D);
    out.push_back({a, term.k});
  }
  return RadicalSum(ctx, std::move(out));
}

std::vector<double> orbit_moduli(const RadicalSum& x) {
  const auto& ctx = x.context;
  const i64 size = ctx.group_order();
  require_orbit(size);
  auto n = ctx.kummer_orders();
  const i64 L = lcm_of(n);
  auto roots = unit_roots(L);
  const std::size_t J = x.terms.size();
  std::vector<std::complex<double>> z(J);
  std::vector<std::vector<i64>> step(J, std::vector<i64>(n.size()));
  for (std::size_t j = 0; j < J; ++j) {
    z[j] = x.term_value(j);
    for (std::size_t l = 0; l < n.size(); ++l) step[j][l] = mod_floor(x.terms[j].k[l], n[l]) * (L / n[l]);
  }
  std::vector<double> out(static_cast<std::size_t>(size));
  for (i64 idx = 0; idx < size; ++idx) {
    auto r = ctx.element(idx);
    std::complex<double> acc = 0;
    for (std::size_t j = 0; j < J; ++j) {
      i64 e = 0;
      for (std::size_t l = 0; l < n.size(); ++l) e = (e + r[l] * step[j][l]) % L;
      acc += z[j] * roots[static_cast<std::size_t>(e)];
    }
    out[static_cast<std::size_t>(idx)] = std::norm(acc);
  }
  return out;
}

double cosine_expansion(const RadicalSum& x, const GaloisElement& sigma) {
  const auto& ctx = x.context;
  if (mod_floor(sigma.t, ctx.D) != 1 % ctx.D) throw Error("cosine expansion needs t = 1");
  if (sigma.r.size() != ctx.rank()) throw Error("r must have one entry per generator");
  const i64 L = lcm_of(ctx.d);
  const std::size_t J = x.terms.size();
  std::vector<double> modulus(J), angle(J);
  for (std::size_t j = 0; j < J; ++j) {
    auto z = x.term_value(j);
    modulus[j] = std::abs(z);
    angle[j] = std::arg(z);
  }
  double total = 0.0;
  for (std::size_t j = 0; j < J; ++j) total += modulus[j] * modulus[j];
  for (std::size_t i = 0; i < J; ++i)
    for (std::size_t j = 0; j < J; ++j) {
      if (i == j) continue;
      i64 num = 0;
      for (std::size_t l = 0; l < ctx.rank(); ++l) {
        i64 diff = mod_floor(x.terms[j].k[l] - x.terms[i].k[l], ctx.d[l]);
        num = mod_floor(num + mod_floor(sigma.r[l] * ctx.c[l], ctx.d[l]) * diff % ctx.d[l] * (L / ctx.d[l]), L);
      }
      double B = angle[j] - angle[i] + 2 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(L);
      total += modulus[i] * modulus[j] * std::cos(B);
    }
  return total;
}

bool in_band(double v, double eps) { return v >= 1 - eps - 1e-12 && v <= 1 + eps + 1e-12; }

namespace {

DGamma summarize(const std::vector<double>& moduli, double eps) {
  DGamma out;
  i64 inside = 0;
  double lo = moduli.front(), hi = moduli.front();
  for (double v : moduli) {
    if (in_band(v, eps)) ++inside;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  out.fraction = Rational(BigInt(static_cast<long>(inside)), BigInt(static_cast<long>(moduli.size())));
  out.fraction.canonicalize();
  out.concyclic = hi - lo <= 1e-10 * std::max(1.0, hi);
  return out;
}

std::vector<i64> galois_units(i64 D) { return D == 1 ? std::vector<i64>{1} : units_mod(D); }

}  // namespace

DGamma d_gamma_eps(const RadicalSum& x, double eps) {
  if (!(eps > 0)) throw Error("eps must be positive");
  return summarize(orbit_moduli(x), eps);
}

MarginalStats marginal_orbit_stats(const RadicalSum& x, double eps) {
  if (!(eps > 0)) throw Error("eps must be positive");
  const auto& ctx = x.context;
  MarginalStats out;
  out.units = galois_units(ctx.D);
  const i64 h = ctx.group_order();
  if (static_cast<double>(h) * static_cast<double>(out.units.size()) > static_cast<double>(kMaxOrbit))
    throw Error("orbit too large");
  for (i64 t : out.units) {
    GaloisElement phi{t, std::vector<i64>(ctx.rank(), 0)};
    out.rows.push_back(d_gamma_eps(apply_galois(phi, x), eps).fraction);
  }
  out.max = *std::max_element(out.rows.begin(), out.rows.end());
  Rational sum = 0;
  for (const auto& q : out.rows) sum += q;
  out.average = sum / static_cast<long>(out.rows.size());

  i64 inside = 0;
  for (i64 t : out.units)
    for (i64 idx = 0; idx < h; ++idx) {
      GaloisElement sigma{t, ctx.element(idx)};
      if (in_band(std::norm(apply_galois(sigma, x).value()), eps)) ++inside;
    }
  out.full_group = Rational(BigInt(static_cast<long>(inside)), BigInt(static_cast<long>(h)) * static_cast<long>(out.units.size()));
  out.full_group.canonicalize();
  out.eq0 = out.average == out.full_group;
  return out;
}

std::vector<GaloisElement> sigma_search(const RadicalSum& x, const equidist::ArcBox& box, double eps) {
  const auto& ctx = x.context;
  if (box.size() != ctx.rank()) throw Error("arc box dimension does not match the radicals");
  auto moduli = orbit_moduli(x);
  std::vector<GaloisElement> out;
  for (i64 idx = 0; idx < static_cast<i64>(moduli.size()); ++idx) {
    auto r = ctx.element(idx);
    bool inside = in_band(moduli[static_cast<std::size_t>(idx)], eps);
    for (std::size_t l = 0; l < r.size() && inside; ++l)
      inside = equidist::arc_contains(box[l], r[l] * ctx.c[l], ctx.d[l]);
    if (inside) out.push_back(GaloisElement{1, r});
  }
  return out;
}

RadicalSum normalize_terms(const RadicalSum& x) {
  std::vector<RadicalTerm> merged;
  std::map<std::vector<i64>, std::size_t> index;
  for (const auto& term : x.terms) {
    auto [it, fresh] = index.emplace(term.k, merged.size());
    if (fresh)
      merged.push_back(term);
    else
      merged[it->second].coeff += term.coeff;
  }
  std::vector<RadicalTerm> kept;
  for (auto& term : merged)
    if (!term.coeff.is_zero()) kept.push_back({term.coeff.lift(x.context.D), term.k});
  return RadicalSum(x.context, std::move(kept));
}

FactoredSum factor_out_division_point(const RadicalSum& raw) {
  RadicalSum x = normalize_terms(raw);
  if (x.terms.empty()) throw Error("zero radical sum");
  const auto& ctx = x.context;
  const std::size_t b = ctx.rank();
  std::vector<i64> lowest(b), divs(b), new_d(b);
  for (std::size_t l = 0; l < b; ++l) {
    lowest[l] = x.terms.front().k[l];
    for (const auto& term : x.terms) lowest[l] = std::min(lowest[l], term.k[l]);
    i64 g = ctx.d[l];
    for (const auto& term : x.terms) g = gcd_abs(g, term.k[l] - lowest[l]);
    divs[l] = g;
    new_d[l] = ctx.d[l] / g;
  }
  std::optional<std::vector<i64>> failures;
  if (ctx.user_failures) {
    failures.emplace();
    for (std::size_t l = 0; l < b; ++l) failures->push_back(gcd_abs(ctx.c[l], new_d[l]));
  }
  RadicalContext yctx = RadicalContext::make(ctx.generators, new_d, ctx.D, failures);
  std::vector<RadicalTerm> yterms;
  for (const auto& term : x.terms) {
    std::vector<i64> k(b);
    for (std::size_t l = 0; l < b; ++l) k[l] = (term.k[l] - lowest[l]) / divs[l];
    yterms.push_back({term.coeff, std::move(k)});
  }
  RadicalSum y(std::move(yctx), std::move(yterms));
  RadicalSum z(ctx, {RadicalTerm{CyclotomicNumber(1), lowest}});
  if (std::abs(y.value() * z.value() - x.value()) > 1e-10 * std::max(1.0, std::abs(x.value())))
    throw InternalInconsistency("factorization does not reproduce x");
  return FactoredSum{std::move(y), std::move(z), std::move(divs)};
}

namespace {

bool free_set(const std::vector<i64>& vals, i64 m) {
  BigInt product = 1;
  for (i64 v : vals) {
    if (mod_floor(v, m) == 0) return false;
    product *= static_cast<long>(m / gcd_abs(v, m));
  }
  return echelon_determinant(equidist::relation_lattice(m, vals)) == product;
}

}  // namespace

std::vector<ColumnRelations> exponent_relation_basis(const std::vector<std::vector<i64>>& kmatrix, i64 m) {
  if (m < 1) throw Error("modulus m must be positive");
  if (kmatrix.empty()) return {};
  const std::size_t cols = kmatrix.front().size();
  for (const auto& row : kmatrix)
    if (row.size() != cols) throw Error("exponent matrix rows must have equal length");
  std::vector<ColumnRelations> out(cols);
  for (std::size_t l = 0; l < cols; ++l) {
    auto& col = out[l];
    std::vector<i64> chosen;
    for (std::size_t j = 0; j < kmatrix.size(); ++j) {
      auto trial = chosen;
      trial.push_back(kmatrix[j][l]);
      if (free_set(trial, m)) {
        col.J.push_back(j);
        chosen = std::move(trial);
      }
    }
    for (std::size_t j = 0; j < kmatrix.size(); ++j) {
      TermRelation rel;
      rel.mu.assign(col.J.size(), 0);
      auto pos = std::find(col.J.begin(), col.J.end(), j);
      if (pos != col.J.end()) {
        rel.mu[static_cast<std::size_t>(pos - col.J.begin())] = symmetric_mod(-1, m);
        if (m == 1) rel.mu[static_cast<std::size_t>(pos - col.J.begin())] = 0;
      } else {
        std::vector<i64> vals{kmatrix[j][l]};
        vals.insert(vals.end(), chosen.begin(), chosen.end());
        IntMatrix lattice = equidist::relation_lattice(m, vals);
        const IntRow& first = lattice.front();
        if (first[0] <= 0) throw InternalInconsistency("relation lattice lacks a pivot on the first coordinate");
        rel.lambda = first[0].get_si();
        for (std::size_t i = 0; i < col.J.size(); ++i) rel.mu[i] = symmetric_mod(BigInt(first[i + 1] % static_cast<long>(m)).get_si(), m);
      }
      i64 check = rel.lambda * kmatrix[j][l];
      for (std::size_t i = 0; i < col.J.size(); ++i) check += rel.mu[i] * chosen[i];
      if (mod_floor(check, m) != 0) throw InternalInconsistency("relation does not vanish mod m");
      col.relations.push_back(std::move(rel));
    }
  }
  return out;
}

IdentitySides energy_identity(const std::vector<double>& xs, double eta) {
  IdentitySides out;
  double squares = 0.0, cross = 0.0, diffs = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    squares += xs[i] * xs[i];
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (i == j) continue;
      cross += xs[i] * xs[j];
      diffs += (xs[i] - xs[j]) * (xs[i] - xs[j]);
    }
  }
  const double n = static_cast<double>(xs.size());
  out.lhs = squares + eta * cross;
  out.rhs = -eta / 2 * diffs + (1 + eta * (n - 1)) * squares;
  return out;
}

EnergyProfile term_energy_profile(const RadicalSum& raw, double eps, double gamma) {
  RadicalSum x = normalize_terms(raw);
  EnergyProfile out;
  std::vector<double> abs_values;
  for (std::size_t j = 0; j < x.terms.size(); ++j) {
    double a = std::abs(x.term_value(j));
    abs_values.push_back(a);
    out.term_moduli.push_back(a * a);
    out.energy += a * a;
  }
  out.dgamma = d_gamma_eps(x, eps);
  const double eta = std::sin(gamma * eps);
  out.plus = energy_identity(abs_values, eta);
  out.minus = energy_identity(abs_values, -eta);
  auto agree = [](const IdentitySides& s) { return std::abs(s.lhs - s.rhs) <= 1e-12 * std::max(1.0, std::abs(s.lhs)); };
  out.identity_holds = agree(out.plus) && agree(out.minus);
  return out;
}

}  // namespace cyclolab::radical
