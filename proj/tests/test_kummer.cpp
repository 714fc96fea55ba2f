#include <doctest.h>

#include "cyclolab/kummer.hpp"

using namespace cyclolab;
using namespace cyclolab::kummer;

TEST_CASE("sqrt in cyclotomic fields") {
  CHECK(sqrt_in_cyclotomic(2, 8));
  CHECK_FALSE(sqrt_in_cyclotomic(2, 12));
  CHECK(sqrt_in_cyclotomic(-1, 4));
  CHECK(sqrt_in_cyclotomic(-3, 3));
  CHECK(sqrt_in_cyclotomic(5, 5));
  CHECK(sqrt_in_cyclotomic(Rational(9, 4), 1));
  CHECK(sqrt_in_cyclotomic(Rational(1, 2), 8));
  CHECK_FALSE(sqrt_in_cyclotomic(3, 3));
  CHECK_THROWS_AS(sqrt_in_cyclotomic(0, 3), Error);
  // sqrt(2) = zeta_8 + zeta_8^{-1}
  CyclotomicNumber r = CyclotomicNumber::zeta(8, 1) + CyclotomicNumber::zeta(8, 7);
  CHECK(r * r == CyclotomicNumber(2L));
}

TEST_CASE("squarefree parts and conductors") {
  CHECK(squarefree_part(Rational(12)) == 3);
  CHECK(squarefree_part(Rational(-8)) == -2);
  CHECK(squarefree_part(Rational(6, 5)) == 30);
  CHECK(quadratic_conductor(BigInt(5)) == 5);
  CHECK(quadratic_conductor(BigInt(-1)) == 4);
  CHECK(quadratic_conductor(BigInt(2)) == 8);
  CHECK(quadratic_conductor(BigInt(-3)) == 3);
}

TEST_CASE("rational roots") {
  CHECK(*rational_root(8, 3) == 2);
  CHECK(*rational_root(-8, 3) == -2);
  CHECK(*rational_root(Rational(16, 81), 4) == Rational(2, 3));
  CHECK_FALSE(rational_root(-4, 2));
  CHECK_FALSE(rational_root(2, 2));
}

TEST_CASE("roots in cyclotomic fields") {
  CHECK(root_in_cyclotomic(-4, 4, 4));   // (1 + i)^4 = -4
  CHECK(root_in_cyclotomic(9, 4, 3));    // sqrt(-3)^4 = 9
  CHECK_FALSE(root_in_cyclotomic(9, 4, 1));
  CHECK(root_in_cyclotomic(4, 4, 8));
  CHECK_FALSE(root_in_cyclotomic(2, 4, 200));
  CHECK_FALSE(root_in_cyclotomic(2, 3, 9));
  CHECK(root_in_cyclotomic(-1, 2, 4));
  CHECK(root_in_cyclotomic(-1, 8, 16));
  CHECK_FALSE(root_in_cyclotomic(-1, 8, 8));
  for (i64 m : {1, 3, 4, 8, 12, 24})
    for (int a : {2, 3, 5, 6, -2, -1, 7})
      CHECK(root_in_cyclotomic(a, 2, m) == sqrt_in_cyclotomic(a, m));
}

TEST_CASE("rank1 failure examples") {
  auto r = rank1_failure(2, 2, 8);
  CHECK(r.c == 2);
  CHECK(r.degree == 1);
  auto s = rank1_failure(2, 3, 9);
  CHECK(s.c == 1);
  CHECK(s.degree == 3);
  auto t = rank1_failure(4, 2, 6);
  CHECK(t.c == 2);
  CHECK(t.degree == 1);
  CHECK(rank1_failure(8, 6, 6).c == 3);
  CHECK(rank1_failure(-4, 4, 4).c == 4);
  CHECK_THROWS_WITH_AS(rank1_failure(1, 2, 4), "torsion generator", Error);
  CHECK_THROWS_WITH_AS(rank1_failure(-1, 2, 4), "torsion generator", Error);
  CHECK_THROWS_AS(rank1_failure(2, 3, 4), Error);
}

TEST_CASE("rank1 failure properties") {
  for (Rational a : {Rational(2), Rational(-2), Rational(9), Rational(-27), Rational(16, 81), Rational(12)})
    for (i64 m = 1; m <= 72; ++m)
      for (i64 d2 : divisors(m)) {
        auto r2 = rank1_failure(a, d2, m);
        CHECK(r2.c * r2.degree == d2);
        for (i64 d1 : divisors(d2)) CHECK(r2.c % rank1_failure(a, d1, m).c == 0);
        // brute force over divisors with the general membership test
        i64 best = 1;
        for (i64 e : divisors(d2))
          if (root_in_cyclotomic(a, e, m)) best = e;
        CHECK(best == r2.c);
      }
}

TEST_CASE("empirical failure bound for a = 2") {
  i64 cmax = 0;
  for (i64 m = 1; m <= 200; ++m)
    for (i64 d : divisors(m)) cmax = std::max(cmax, rank1_failure(2, d, m).c);
  CHECK(cmax == 2);
}

TEST_CASE("independence") {
  CHECK(multiplicatively_independent({2, 3}));
  CHECK_FALSE(multiplicatively_independent({2, 8}));
  CHECK_FALSE(multiplicatively_independent({6, Rational(2, 3), 3}));
  CHECK(multiplicatively_independent({Rational(6, 5)}));
  CHECK_THROWS_AS(multiplicatively_independent({-2}), Error);
}

TEST_CASE("tower degrees") {
  auto a = tower_degrees({2, 3}, {3, 3}, 9);
  CHECK(a.c == std::vector<i64>{1, 1});
  CHECK(a.shape == std::vector<i64>{3, 3});
  CHECK(a.order() == 9);
  auto b = tower_degrees({2}, {2}, 8);
  CHECK(b.c == std::vector<i64>{2});
  CHECK(b.order() == 1);
  auto c = tower_degrees({2, 5}, {2, 2}, 40);
  CHECK(c.c == std::vector<i64>{2, 2});
  // sqrt(21) lies in Q(zeta_42) although sqrt(3) and sqrt(7) do not
  CHECK_THROWS_WITH_AS(tower_degrees({3, 7}, {2, 2}, 42), "entangled case unsupported", Error);
  auto d = tower_degrees({3, 7}, {2, 2}, 2);
  CHECK(d.order() == 4);
  CHECK_THROWS_AS(tower_degrees({2, 4}, {2, 2}, 2), Error);
}

TEST_CASE("oracle examples") {
  auto r = root_membership_oracle(2, 2, 8);
  REQUIRE(r.verdict == OracleVerdict::yes);
  CHECK(r.root->pow(2) == CyclotomicNumber(2L));
  CyclotomicNumber s2 = CyclotomicNumber::zeta(8, 1) + CyclotomicNumber::zeta(8, 7);
  CHECK((*r.root == s2 || *r.root == -s2));
  CHECK(root_membership_oracle(2, 2, 5).verdict == OracleVerdict::no);
  auto n = root_membership_oracle(9, 2, 3);
  REQUIRE(n.verdict == OracleVerdict::yes);
  CHECK(n.root->is_rational());
  CHECK(abs(n.root->rational_value()) == 3);
  CHECK_THROWS_AS(root_membership_oracle(2, 9, 16), Error);
  CHECK(to_string(OracleVerdict::inconclusive) == "inconclusive");
}

TEST_CASE("oracle agrees with rank1 failure on the scan grid") {
  for (int a : {2, 3, 5, 6, -2})
    for (i64 d : {2, 4})
      for (i64 m = d; m <= 24; m += d) {
        auto c = rank1_failure(a, d, m).c;
        auto oc = oracle_failure(a, d, m);
        REQUIRE_MESSAGE(oc, "a=" << a << " d=" << d << " m=" << m);
        CHECK_MESSAGE(*oc == c, "a=" << a << " d=" << d << " m=" << m);
      }
}

TEST_CASE("oracle agrees with the exact criterion up to dimension 64") {
  int inconclusive = 0;
  for (Rational a : {Rational(2), Rational(-3), Rational(9), Rational(-4), Rational(5, 4)})
    for (i64 m = 1; m <= 40; ++m)
      for (i64 e = 1; e <= 8; ++e) {
        if (e * euler_phi(m) > 64) continue;
        auto r = root_membership_oracle(a, e, m);
        if (r.verdict == OracleVerdict::inconclusive) {
          ++inconclusive;
          continue;
        }
        CHECK_MESSAGE((r.verdict == OracleVerdict::yes) == root_in_cyclotomic(a, e, m),
                      "a=" << a.get_str() << " e=" << e << " m=" << m);
        if (r.root) CHECK(r.root->pow(e) == CyclotomicNumber(a));
      }
  CHECK(inconclusive == 0);
}
