#include "cyclolab/qpoly.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <sstream>

#include "cyclolab/numtheory.hpp"

namespace cyclolab {

QPoly::QPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

QPoly QPoly::monomial(const Rational& c, int degree) {
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return QPoly(std::move(v));
}

QPoly QPoly::from_ints(const std::vector<long long>& coeffs) {
  std::vector<Rational> v;
  v.reserve(coeffs.size());
  for (long long c : coeffs) v.emplace_back(static_cast<long>(c));
  return QPoly(std::move(v));
}

void QPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational QPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

QPoly QPoly::operator+(const QPoly& o) const {
  std::vector<Rational> v(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) v[i] += o.coeffs_[i];
  return QPoly(std::move(v));
}

QPoly QPoly::operator-() const {
  std::vector<Rational> v = coeffs_;
  for (auto& c : v) c = -c;
  return QPoly(std::move(v));
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + (-o); }

QPoly QPoly::operator*(const QPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> v(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return QPoly(std::move(v));
}

QPoly QPoly::operator*(const Rational& c) const {
  std::vector<Rational> v = coeffs_;
  for (auto& x : v) x *= c;
  return QPoly(std::move(v));
}

void QPoly::divmod(const QPoly& divisor, QPoly& quotient, QPoly& remainder) const {
  if (divisor.is_zero()) throw Error("division by zero");
  std::vector<Rational> rem = coeffs_;
  const int dd = divisor.degree();
  const int qd = degree() - dd;
  std::vector<Rational> quo(qd >= 0 ? static_cast<std::size_t>(qd) + 1 : 0);
  const Rational& lead = divisor.leading();
  for (int k = qd; k >= 0; --k) {
    Rational c = rem[static_cast<std::size_t>(k + dd)] / lead;
    quo[static_cast<std::size_t>(k)] = c;
    if (c == 0) continue;
    for (int i = 0; i <= dd; ++i)
      rem[static_cast<std::size_t>(k + i)] -= c * divisor.coeffs_[static_cast<std::size_t>(i)];
  }
  if (qd >= 0) rem.resize(static_cast<std::size_t>(dd));
  quotient = QPoly(std::move(quo));
  remainder = QPoly(std::move(rem));
}

QPoly QPoly::operator%(const QPoly& o) const {
  QPoly q, r;
  divmod(o, q, r);
  return r;
}

QPoly QPoly::operator/(const QPoly& o) const {
  QPoly q, r;
  divmod(o, q, r);
  return q;
}

QPoly QPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> v(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<long>(i);
  return QPoly(std::move(v));
}

QPoly QPoly::monic() const {
  if (is_zero()) return {};
  return *this * Rational(1 / leading());
}

std::complex<double> QPoly::eval(std::complex<double> z) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + it->get_d();
  return acc;
}

QPoly QPoly::primitive() const {
  if (is_zero()) return {};
  BigInt den_lcm = 1;
  for (const auto& c : coeffs_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  std::vector<BigInt> ints;
  BigInt content = 0;
  for (const auto& c : coeffs_) {
    BigInt v = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    ints.push_back(v);
  }
  if (ints.back() < 0) content = -content;
  std::vector<Rational> v;
  v.reserve(ints.size());
  for (auto& x : ints) v.emplace_back(BigInt(x / content));
  return QPoly(std::move(v));
}

std::string QPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = (mag == 1) && i > 0;
    if (!unit) os << format_rational(mag);
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

QPoly gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

QPoly ext_gcd(const QPoly& a, const QPoly& b, QPoly& s, QPoly& t) {
  QPoly r0 = a, r1 = b;
  QPoly s0({Rational(1)}), s1;
  QPoly t0, t1({Rational(1)});
  while (!r1.is_zero()) {
    QPoly q, r;
    r0.divmod(r1, q, r);
    QPoly s2 = s0 - q * s1;
    QPoly t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) {
    s = {};
    t = {};
    return {};
  }
  Rational inv = 1 / r0.leading();
  s = s0 * inv;
  t = t0 * inv;
  return r0 * inv;
}

QPoly squarefree_part(const QPoly& p) {
  if (p.degree() <= 0) return p.primitive();
  QPoly g = gcd(p, p.derivative());
  return (p / g).primitive();
}

const QPoly& cyclotomic_polynomial(long long n) {
  static std::mutex mutex;
  static std::map<long long, QPoly> cache;
  if (n <= 0) throw Error("cyclotomic_polynomial: order must be positive");
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  QPoly result = QPoly::monomial(1, static_cast<int>(n)) - QPoly({Rational(1)});
  for (i64 e : divisors(n)) {
    if (e == n) continue;
    result = result / cyclotomic_polynomial(e);
  }
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(n, std::move(result)).first->second;
}

namespace {

class PolyScanner {
 public:
  explicit PolyScanner(const std::string& text) {
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s_.push_back(ch);
  }

  QPoly parse() {
    if (s_.empty()) fail();
    QPoly total;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (pos_ != 0) {
        fail();
      }
      total = total + term() * Rational(sign);
    }
    return total;
  }

 private:
  QPoly term() {
    Rational coeff = 1;
    bool have_coeff = false;
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
    if (pos_ > start) {
      coeff = parse_rational(s_.substr(start, pos_ - start));
      have_coeff = true;
    }
    if (pos_ < s_.size() && s_[pos_] == '*') {
      if (!have_coeff) fail();
      ++pos_;
    }
    int degree = 0;
    if (pos_ < s_.size() && (s_[pos_] == 'x' || s_[pos_] == 'z')) {
      ++pos_;
      degree = 1;
      if (pos_ < s_.size() && s_[pos_] == '^') {
        ++pos_;
        std::size_t ds = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == ds) fail();
        degree = std::stoi(s_.substr(ds, pos_ - ds));
      }
    } else if (!have_coeff) {
      fail();
    }
    if (pos_ < s_.size() && s_[pos_] != '+' && s_[pos_] != '-') fail();
    return QPoly::monomial(coeff, degree);
  }

  [[noreturn]] void fail() const { throw Error("malformed polynomial: '" + s_ + "'"); }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

QPoly parse_polynomial(const std::string& text) { return PolyScanner(text).parse(); }

}  // namespace cyclolab
