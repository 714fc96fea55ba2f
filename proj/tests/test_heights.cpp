#include <doctest.h>

#include <cmath>
#include <random>

#include "cyclolab/heights.hpp"
#include "cyclolab/numtheory.hpp"

using namespace cyclolab;
using namespace cyclolab::heights;

namespace {

// Height of an integer polynomial from the product of its roots' moduli,
// using only the library's root finder.
double brute_height(const QPoly& p) {
  QPoly q = p.primitive();
  double m = std::abs(q.leading().get_d());
  for (auto r : polynomial_roots(q)) m *= std::max(1.0, std::abs(r));
  return std::log(m) / q.degree();
}

}  // namespace

TEST_CASE("weil height examples") {
  CHECK(weil_height(parse_polynomial("x-2")) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(weil_height(parse_polynomial("3x-1")) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  double phi = (1 + std::sqrt(5.0)) / 2;
  CHECK(std::abs(weil_height(parse_polynomial("x^2-x-1")) - 0.5 * std::log(phi)) < 1e-12);
  CHECK(std::abs(weil_height(parse_polynomial("x^3-2")) - std::log(2.0) / 3) < 1e-12);
  CHECK_THROWS_WITH_AS(weil_height(QPoly()), "zero polynomial", Error);
}

TEST_CASE("roots") {
  auto r = polynomial_roots(parse_polynomial("x^2+1"));
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0] - std::complex<double>(0, -1)) < 1e-14);
  CHECK(std::abs(r[1] - std::complex<double>(0, 1)) < 1e-14);
  for (long long k = 1; k <= 30; ++k) {
    const QPoly& phi_k = cyclotomic_polynomial(k);
    for (auto z : polynomial_roots(phi_k)) {
      CHECK(std::abs(std::abs(z) - 1.0) < 1e-13);
      CHECK(std::abs(phi_k.eval(z)) < 1e-11);
    }
  }
  CHECK(fujiwara_bound(parse_polynomial("x^2-4")) >= 2.0);
  QPoly big = QPoly::monomial(1, 65) - QPoly({Rational(1)});
  CHECK_THROWS_AS(polynomial_roots(big), Error);
}

TEST_CASE("irreducibility probes") {
  CHECK(probe_irreducibility(parse_polynomial("x^2-4")).rational_root);
  CHECK(probe_irreducibility(parse_polynomial("2x^2-3x+1")).rational_root);
  CHECK(probe_irreducibility(parse_polynomial("x^4+2x^2+1")).quadratic_factor);
  CHECK(probe_irreducibility(parse_polynomial("x^4-x^2-2")).quadratic_factor);
  CHECK(probe_irreducibility(parse_polynomial("x^6-2")).cubic_factor == false);
  CHECK(probe_irreducibility(parse_polynomial("x^2+x+1") * parse_polynomial("x^4-x^3+x+1")).quadratic_factor);
  CHECK_FALSE(probe_irreducibility(parse_polynomial("x^3-2")).reducible());
  CHECK_FALSE(probe_irreducibility(cyclotomic_polynomial(15)).reducible());
  QPoly cubic_product = parse_polynomial("x^3-2") * parse_polynomial("x^3-3x-1");
  CHECK(probe_irreducibility(cubic_product).cubic_factor);
  CHECK_THROWS_WITH_AS(AlgebraicNumber(parse_polynomial("x^2-1")), "polynomial is reducible", Error);
}

TEST_CASE("power transform examples") {
  AlgebraicNumber cbrt2(parse_polynomial("x^3-2"), 2);
  CHECK(std::abs(cbrt2.value() - std::cbrt(2.0)) < 1e-14);
  auto cube = power_transform(cbrt2, 3);
  CHECK(cube.minpoly == parse_polynomial("x-2"));
  CHECK(std::abs(weil_height(cube) - std::log(2.0)) < 1e-12);
  AlgebraicNumber golden(parse_polynomial("x^2-x-1"), 1);
  CHECK(std::abs(weil_height(power_transform(golden, 1)) - weil_height(golden)) < 1e-12);
  auto sq = power_transform(golden, 2);
  CHECK(sq.minpoly == parse_polynomial("x^2-3x+1"));
  CHECK(std::abs(weil_height(sq) - std::log((1 + std::sqrt(5.0)) / 2)) < 1e-12);
  auto inv = power_transform(cbrt2, -1);
  CHECK(inv.minpoly == parse_polynomial("2x^3-1"));
  CHECK(std::abs(inv.value() - 1 / std::cbrt(2.0)) < 1e-12);
  CHECK_THROWS_AS(power_transform(AlgebraicNumber::rational(0), -2), Error);
  CHECK_THROWS_AS(power_transform(cbrt2, 0), Error);
  // zeta_6^3 = -1
  auto m1 = power_transform(AlgebraicNumber(cyclotomic_polynomial(6)), 3);
  CHECK(m1.minpoly == parse_polynomial("x+1"));
}

TEST_CASE("power law on random polynomials") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> coef(-9, 9);
  int tested = 0;
  while (tested < 200) {
    int deg = 1 + static_cast<int>(rng() % 4);
    std::vector<long long> c;
    for (int i = 0; i <= deg; ++i) c.push_back(coef(rng));
    if (c.back() == 0 || c.front() == 0) continue;
    QPoly p = QPoly::from_ints(c);
    if (probe_irreducibility(p).reducible()) continue;
    AlgebraicNumber alpha(p, static_cast<int>(rng() % static_cast<unsigned>(deg)));
    for (long n : {2L, 3L, -2L}) {
      auto beta = power_transform(alpha, n);
      CHECK(std::abs(weil_height(beta) - std::abs(n) * weil_height(alpha)) < 1e-9);
      CHECK(std::abs(beta.value() - std::pow(alpha.value(), static_cast<double>(n))) < 1e-8 * std::max(1.0, std::abs(beta.value())));
    }
    CHECK(weil_height(alpha) >= -1e-12);
    CHECK(std::abs(weil_height(alpha) - brute_height(p)) < 1e-12);
    ++tested;
  }
}

TEST_CASE("galois invariance") {
  QPoly p = parse_polynomial("x^4-10x^2+1");
  for (int i = 0; i < 4; ++i) CHECK(weil_height(AlgebraicNumber(p, i)) == weil_height(AlgebraicNumber(p, 0)));
}

TEST_CASE("kronecker") {
  for (long long k = 1; k <= 30; ++k) {
    AlgebraicNumber z(cyclotomic_polynomial(k));
    CHECK(is_root_of_unity(z));
    CHECK(weil_height(z) < 1e-9);
  }
  for (auto text : {"x-2", "x^2-x-1", "x^3-2", "x^4-10x^2+1", "2x^2+x+2", "x^3-x-1"}) {
    AlgebraicNumber a(parse_polynomial(text));
    CHECK_FALSE(is_root_of_unity(a));
    CHECK(weil_height(a) > 1e-9);
  }
  // non-monic with roots on the unit circle
  AlgebraicNumber b(parse_polynomial("5x^2-6x+5"));
  CHECK(std::abs(std::abs(b.value()) - 1) < 1e-12);
  CHECK_FALSE(is_root_of_unity(b));
  CHECK(weil_height(b) > 0.5);
}

TEST_CASE("radical heights") {
  auto h = radical_height(2, 3);
  CHECK(std::abs(h.height - std::log(2.0) / 3) < 1e-12);
  CHECK(h.cross_checked);
  CHECK(radical_height(1, 5).height == 0);
  auto h2 = radical_height(Rational(6, 5), 2);
  CHECK(std::abs(h2.height - std::log(6.0) / 2) < 1e-12);
  CHECK(h2.cross_checked);
  CHECK_FALSE(radical_height(4, 2).cross_checked);
  CHECK_THROWS_AS(radical_height(-2, 3), Error);
}
