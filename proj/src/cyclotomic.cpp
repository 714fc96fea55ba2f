#include "cyclolab/cyclotomic.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cyclolab/numtheory.hpp"

namespace cyclolab {

CyclotomicNumber::CyclotomicNumber(const Rational& value) : order_(1), coeffs_{value} {}

CyclotomicNumber::CyclotomicNumber(long order, std::vector<Rational> coeffs) : order_(order) {
  if (order <= 0) throw Error("cyclotomic order must be positive");
  coeffs_.assign(static_cast<std::size_t>(order), Rational(0));
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs_[i % static_cast<std::size_t>(order)] += coeffs[i];
}

CyclotomicNumber CyclotomicNumber::zeta(long order, long long k) {
  CyclotomicNumber z = zero(order);
  z.coeffs_[static_cast<std::size_t>(mod_floor(k, order))] = 1;
  return z;
}

CyclotomicNumber CyclotomicNumber::lift(long new_order) const {
  if (new_order == order_) return *this;
  if (new_order % order_ != 0) throw Error("lift: target order must be a multiple");
  const long step = new_order / order_;
  CyclotomicNumber out = zero(new_order);
  for (long i = 0; i < order_; ++i) out.coeffs_[static_cast<std::size_t>(i * step)] = coeffs_[static_cast<std::size_t>(i)];
  return out;
}

void lift_common(CyclotomicNumber& a, CyclotomicNumber& b) {
  if (a.order() == b.order()) return;
  long common = static_cast<long>(lcm_pos(a.order(), b.order()));
  a = a.lift(common);
  b = b.lift(common);
}

CyclotomicNumber CyclotomicNumber::operator+(const CyclotomicNumber& o) const {
  CyclotomicNumber a = *this, b = o;
  lift_common(a, b);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
  return a;
}

CyclotomicNumber CyclotomicNumber::operator-() const {
  CyclotomicNumber a = *this;
  for (auto& c : a.coeffs_) c = -c;
  return a;
}

CyclotomicNumber CyclotomicNumber::operator-(const CyclotomicNumber& o) const { return *this + (-o); }

CyclotomicNumber CyclotomicNumber::operator*(const CyclotomicNumber& o) const {
  CyclotomicNumber a = *this, b = o;
  lift_common(a, b);
  const std::size_t n = a.coeffs_.size();
  CyclotomicNumber out = zero(a.order_);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b.coeffs_[j] == 0) continue;
      out.coeffs_[(i + j) % n] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return out;
}

QPoly CyclotomicNumber::reduced() const { return QPoly(coeffs_) % cyclotomic_polynomial(order_); }

CyclotomicNumber CyclotomicNumber::normalized() const { return CyclotomicNumber(order_, reduced().coeffs()); }

bool CyclotomicNumber::is_zero() const {
  bool all_zero = true;
  for (const auto& c : coeffs_)
    if (c != 0) {
      all_zero = false;
      break;
    }
  return all_zero || reduced().is_zero();
}

bool CyclotomicNumber::is_rational() const { return reduced().degree() <= 0; }

Rational CyclotomicNumber::rational_value() const {
  QPoly r = reduced();
  if (r.degree() > 0) throw Error("value is not rational");
  return r.coeff(0);
}

CyclotomicNumber CyclotomicNumber::inverse() const {
  QPoly r = reduced();
  if (r.is_zero()) throw Error("division by zero");
  QPoly s, t;
  QPoly g = ext_gcd(r, cyclotomic_polynomial(order_), s, t);
  if (g.degree() != 0) throw InternalInconsistency("inverse: non-unit gcd with cyclotomic polynomial");
  return CyclotomicNumber(order_, s.coeffs());
}

CyclotomicNumber CyclotomicNumber::pow(long long exponent) const {
  CyclotomicNumber base = exponent < 0 ? inverse() : *this;
  unsigned long long e = static_cast<unsigned long long>(exponent < 0 ? -exponent : exponent);
  CyclotomicNumber result = CyclotomicNumber(Rational(1)).lift(order_);
  while (e > 0) {
    if (e & 1U) result = result * base;
    base = base * base;
    e >>= 1U;
  }
  return result;
}

CyclotomicNumber CyclotomicNumber::galois_conjugate(long long t) const {
  if (gcd_abs(t, order_) != 1) throw Error("not a Galois element");
  CyclotomicNumber out = zero(order_);
  for (long i = 0; i < order_; ++i)
    out.coeffs_[static_cast<std::size_t>(mod_floor(static_cast<i64>(i) * mod_floor(t, order_), order_))] +=
        coeffs_[static_cast<std::size_t>(i)];
  return out;
}

CyclotomicNumber CyclotomicNumber::abs_squared() const { return *this * conj(); }

std::complex<double> embed_power_basis(long order, const std::vector<Rational>& coeffs) {
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(order);
    acc += coeffs[i].get_d() * std::polar(1.0, angle);
  }
  return acc;
}

std::complex<double> CyclotomicNumber::embed() const { return embed_power_basis(order_, coeffs_); }

std::string CyclotomicNumber::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (long i = 0; i < order_; ++i) {
    const Rational& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (first) {
      os << format_rational(c);
    } else {
      os << (c < 0 ? " - " : " + ") << format_rational(abs(c));
    }
    if (i > 0) os << "*z^" << i;
    first = false;
  }
  if (first) os << "0";
  os << " @ " << order_;
  return os.str();
}

CyclotomicNumber CyclotomicNumber::parse(const std::string& raw) {
  std::string s;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  auto at = s.find('@');
  auto fail = [&]() -> CyclotomicNumber { throw Error("malformed cyclotomic number: '" + raw + "'"); };
  long order = 1;
  std::string body = s;
  if (at != std::string::npos) {
    body = s.substr(0, at);
    std::string ord = s.substr(at + 1);
    if (ord.empty() || ord.find_first_not_of("0123456789") != std::string::npos) return fail();
    order = std::stol(ord);
    if (order <= 0) return fail();
  }
  if (body.empty()) return fail();
  std::vector<Rational> coeffs(static_cast<std::size_t>(order));
  std::size_t pos = 0;
  while (pos < body.size()) {
    int sign = 1;
    while (pos < body.size() && (body[pos] == '+' || body[pos] == '-')) {
      if (body[pos] == '-') sign = -sign;
      ++pos;
    }
    std::size_t start = pos;
    while (pos < body.size() && (std::isdigit(static_cast<unsigned char>(body[pos])) || body[pos] == '/' || body[pos] == '.'))
      ++pos;
    Rational c = 1;
    bool have_coeff = pos > start;
    if (have_coeff) c = parse_rational(body.substr(start, pos - start));
    if (pos < body.size() && body[pos] == '*') {
      if (!have_coeff) return fail();
      ++pos;
    }
    long exponent = 0;
    if (pos < body.size() && body[pos] == 'z') {
      ++pos;
      exponent = 1;
      if (pos < body.size() && body[pos] == '^') {
        ++pos;
        std::size_t es = pos;
        while (pos < body.size() && std::isdigit(static_cast<unsigned char>(body[pos]))) ++pos;
        if (es == pos) return fail();
        exponent = std::stol(body.substr(es, pos - es));
      }
    } else if (!have_coeff) {
      return fail();
    }
    if (pos < body.size() && body[pos] != '+' && body[pos] != '-') return fail();
    coeffs[static_cast<std::size_t>(exponent % order)] += sign * c;
  }
  return CyclotomicNumber(order, std::move(coeffs));
}

}  // namespace cyclolab
