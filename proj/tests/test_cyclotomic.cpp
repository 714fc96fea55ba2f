#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cyclolab/cyclotomic.hpp"
#include "cyclolab/numtheory.hpp"
#include "support.hpp"

using namespace cyclolab;
using Z = CyclotomicNumber;

TEST_CASE("ring operations on small identities") {
  CHECK((Z(1) + Z::zeta(3) + Z::zeta(3, 2)).is_zero());
  CHECK(Z::zeta(6) * Z::zeta(6, 5) == Z(1));
  Z s = Z::zeta(8) + Z::zeta(8, 7);
  CHECK(s * s == Z(2));
  CHECK((s * s).order() == 8);
  CHECK((Z::zeta(4) + Z::zeta(6)).order() == 12);
}

TEST_CASE("inverse of zero is rejected") {
  CHECK_THROWS_WITH(Z(0).inverse(), "division by zero");
  CHECK_THROWS_WITH((Z(1) + Z::zeta(3) + Z::zeta(3, 2)).inverse(), "division by zero");
}

TEST_CASE("galois conjugation") {
  CHECK(Z::zeta(5).galois_conjugate(-1) == Z::zeta(5, 4));
  CHECK(Z(2).lift(7).galois_conjugate(3) == Z(2));
  Z s = Z::zeta(8) + Z::zeta(8, 7);
  CHECK(s.galois_conjugate(3) == Z::zeta(8, 3) + Z::zeta(8, 5));
  CHECK(s.galois_conjugate(3) == -s);
  CHECK_THROWS_WITH(Z::zeta(8).galois_conjugate(2), "not a Galois element");
}

TEST_CASE("abs_squared") {
  CHECK(Z::zeta(9, 4).abs_squared() == Z(1));
  CHECK((Z(1) + Z::zeta(4)).abs_squared() == Z(2));
  CHECK(Z(0).abs_squared().is_zero());
}

TEST_CASE("property: ring laws on random pairs") {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<long> order(1, 24);
  for (int trial = 0; trial < 500; ++trial) {
    Z x = testing::random_cyclotomic(rng, order(rng));
    Z y = testing::random_cyclotomic(rng, order(rng));
    Z w = testing::random_cyclotomic(rng, order(rng));
    REQUIRE((x * y) * w == x * (y * w));
    REQUIRE(x * (y + w) == x * y + x * w);
    REQUIRE(x * y == y * x);
    if (!x.is_zero()) REQUIRE(x * x.inverse() == Z(1));
  }
}

TEST_CASE("property: galois conjugation is a ring homomorphism") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> order(1, 24);
  for (int trial = 0; trial < 200; ++trial) {
    long d = order(rng);
    Z x = testing::random_cyclotomic(rng, d);
    Z y = testing::random_cyclotomic(rng, d);
    for (i64 t : units_mod(d)) {
      REQUIRE((x * y).galois_conjugate(t) == x.galois_conjugate(t) * y.galois_conjugate(t));
      REQUIRE((x + y).galois_conjugate(t) == x.galois_conjugate(t) + y.galois_conjugate(t));
    }
  }
}

TEST_CASE("property: numeric embedding consistency") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> order(1, 24);
  for (int trial = 0; trial < 300; ++trial) {
    long d = order(rng);
    Z x = testing::random_cyclotomic(rng, d);
    std::complex<double> direct = 0.0;
    for (long j = 0; j < d; ++j)
      direct += x.coeffs()[j].get_d() * std::exp(std::complex<double>(0, 2 * std::numbers::pi * j / d));
    REQUIRE(std::abs(x.embed() - direct) < 1e-10);
    Z a = x.abs_squared();
    REQUIRE(a == a.conj());
    REQUIRE(std::abs(a.embed().real() - std::norm(x.embed())) < 1e-9);
    REQUIRE(std::abs(a.embed().imag()) < 1e-9);
    REQUIRE(a.embed().real() > -1e-9);
  }
}

TEST_CASE("lift preserves equality and arithmetic") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    Z x = testing::random_cyclotomic(rng, 6);
    Z y = testing::random_cyclotomic(rng, 6);
    REQUIRE(x.lift(18) * y.lift(18) == (x * y).lift(18));
    REQUIRE(x.lift(12) == x);
  }
}

TEST_CASE("text serialization round-trips exactly") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Z x = testing::random_cyclotomic(rng, 1 + trial % 24);
    Z back = Z::parse(x.to_string());
    REQUIRE(back.order() == x.order());
    REQUIRE(back.coeffs() == x.coeffs());
  }
  CHECK(Z::parse("1/2 + 1/2*z^2 @ 8") == (Z(1) + Z::zeta(8, 2)) * Z(Rational(1, 2)));
  CHECK(Z::parse("-1 - z^1 @ 3") == Z::zeta(3, 2));
  CHECK(Z(0).lift(5).to_string() == "0 @ 5");
  CHECK_THROWS_AS(Z::parse("1 + q @ 3"), Error);
  CHECK_THROWS_AS(Z::parse("1 @ 0"), Error);
}
