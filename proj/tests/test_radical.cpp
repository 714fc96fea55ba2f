#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "cyclolab/radical.hpp"
#include "support.hpp"

using namespace cyclolab;
using namespace cyclolab::radical;

namespace {

RadicalContext ctx1(long a, i64 d, i64 D, std::optional<std::vector<i64>> c = {}) {
  return RadicalContext::make({Rational(a)}, {d}, D, std::move(c));
}

RadicalSum sum(const RadicalContext& ctx, std::vector<RadicalTerm> terms) { return RadicalSum(ctx, std::move(terms)); }

const double kSqrt2 = std::sqrt(2.0);

using Column = std::vector<std::vector<i64>>;

}  // namespace

TEST_CASE("context lifts D and computes failures") {
  auto ctx = ctx1(2, 2, 8);
  CHECK(ctx.D == 8);
  CHECK(ctx.c == std::vector<i64>{2});
  CHECK(ctx.group_order() == 1);

  auto lifted = RadicalContext::make({Rational(2)}, {2}, 3);
  CHECK(lifted.D == 6);
  CHECK(lifted.c == std::vector<i64>{1});

  CHECK_THROWS_WITH_AS(RadicalContext::make({Rational(2), Rational(4)}, {2, 2}, 1), "generators must be multiplicatively independent", Error);
  CHECK_THROWS_WITH_AS(RadicalContext::make({Rational(-2)}, {2}, 1), "generators must be positive rationals other than 1", Error);
  CHECK_THROWS_WITH_AS(ctx1(2, 4, 4, std::vector<i64>{3}), "failure c_l must divide d_l", Error);
}

TEST_CASE("apply_galois on cube roots") {
  auto ctx = ctx1(2, 3, 1);
  CHECK(ctx.D == 3);
  CHECK(ctx.c == std::vector<i64>{1});
  auto x = sum(ctx, {{CyclotomicNumber(1), {0}}, {CyclotomicNumber(1), {1}}});
  auto y = apply_galois(GaloisElement{1, {1}}, x);
  auto expected = sum(ctx, {{CyclotomicNumber(1), {0}}, {CyclotomicNumber::zeta(3), {1}}});
  CHECK(y == expected);
  CHECK(apply_galois(GaloisElement::identity(ctx), x) == x);
}

TEST_CASE("apply_galois composes phi and psi") {
  auto ctx = ctx1(2, 2, 8, std::vector<i64>{1});
  auto x = sum(ctx, {{CyclotomicNumber::zeta(8), {1}}});
  auto y = apply_galois(GaloisElement{3, {1}}, x);
  auto expected = sum(ctx, {{-CyclotomicNumber::zeta(8, 3), {1}}});
  CHECK(y == expected);
  std::complex<double> z8 = std::polar(1.0, 2 * M_PI / 8);
  CHECK(std::abs(y.value() - (-std::pow(z8, 3) * kSqrt2)) < 1e-12);
  CHECK_THROWS_WITH_AS(apply_galois(GaloisElement{2, {1}}, x), "t must be coprime to D", Error);
}

TEST_CASE("action composition law") {
  std::mt19937_64 rng(7);
  int checked = 0;
  while (checked < 200) {
    auto x = testing::random_radical_sum(rng, 2, 6, 6, 3, 30);
    const auto& ctx = x.context;
    auto units = ctx.D == 1 ? std::vector<i64>{1} : units_mod(ctx.D);
    auto pick = [&]() {
      GaloisElement g;
      g.t = units[std::uniform_int_distribution<std::size_t>(0, units.size() - 1)(rng)];
      g.r = ctx.element(std::uniform_int_distribution<i64>(0, ctx.group_order() - 1)(rng));
      return g;
    };
    auto s = pick(), t = pick();
    CHECK(apply_galois(s.compose(t, ctx), x) == apply_galois(s, apply_galois(t, x)));
    ++checked;
  }
}

TEST_CASE("orbit_moduli") {
  auto cube = sum(ctx1(2, 3, 1), {{CyclotomicNumber(1), {1}}});
  for (double v : orbit_moduli(cube)) CHECK(v == doctest::Approx(std::pow(2.0, 2.0 / 3.0)).epsilon(1e-13));

  auto one = RadicalSum(RadicalContext::make({}, {}, 1), {{CyclotomicNumber(1), {}}});
  CHECK(orbit_moduli(one) == std::vector<double>{1.0});

  auto half = sum(ctx1(2, 2, 1), {{Rational(1, 2), {0}}, {Rational(1, 2), {1}}});
  auto m = orbit_moduli(half);
  REQUIRE(m.size() == 2);
  CHECK(m[0] == doctest::Approx((1 + kSqrt2) * (1 + kSqrt2) / 4).epsilon(1e-14));
  CHECK(m[1] == doctest::Approx((1 - kSqrt2) * (1 - kSqrt2) / 4).epsilon(1e-12));

  auto big = RadicalContext::make({Rational(2), Rational(3)}, {1009, 1013}, 1);
  CHECK_THROWS_WITH_AS(orbit_moduli(RadicalSum(big, {{CyclotomicNumber(1), {1, 1}}})), "orbit too large", Error);
}

TEST_CASE("cosine expansion examples") {
  auto single = sum(ctx1(3, 4, 4), {{CyclotomicNumber::zeta(4), {3}}});
  for (i64 r = 0; r < 4; ++r) CHECK(cosine_expansion(single, GaloisElement{1, {r}}) == doctest::Approx(std::pow(3.0, 1.5)));

  auto x = sum(ctx1(2, 2, 1), {{CyclotomicNumber(1), {0}}, {CyclotomicNumber(1), {1}}});
  double v = cosine_expansion(x, GaloisElement{1, {1}});
  CHECK(std::abs(v - (3 - 2 * kSqrt2)) < 1e-14);
  auto y = sum(ctx1(2, 2, 8, std::vector<i64>{1}), {{CyclotomicNumber(1), {1}}});
  CHECK_THROWS_AS(cosine_expansion(y, GaloisElement{3, {1}}), Error);
}

TEST_CASE("cosine expansion agrees with direct action") {
  std::mt19937_64 rng(11);
  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto x = testing::random_radical_sum(rng);
    auto r = x.context.element(std::uniform_int_distribution<i64>(0, x.context.group_order() - 1)(rng));
    GaloisElement s{1, r};
    double direct = std::norm(apply_galois(s, x).value());
    worst = std::max(worst, std::abs(direct - cosine_expansion(x, s)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("d_gamma_eps") {
  auto root5 = RadicalSum(RadicalContext::make({}, {}, 5), {{CyclotomicNumber::zeta(5), {}}});
  auto g = d_gamma_eps(root5, 0.1);
  CHECK(g.fraction == 1);
  CHECK(g.concyclic);

  auto s2 = sum(ctx1(2, 2, 1), {{CyclotomicNumber(1), {1}}});
  g = d_gamma_eps(s2, 0.5);
  CHECK(g.fraction == 0);
  CHECK(g.concyclic);
  CHECK(d_gamma_eps(s2, 1.0).fraction == 1);

  auto half = sum(ctx1(2, 2, 1), {{Rational(1, 2), {0}}, {Rational(1, 2), {1}}});
  g = d_gamma_eps(half, 0.5);
  CHECK(g.fraction == Rational(1, 2));
  CHECK_FALSE(g.concyclic);
}

TEST_CASE("division points are concyclic") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto ctx = testing::random_radical_sum(rng).context;
    long order = static_cast<long>(ctx.D);
    auto zeta = CyclotomicNumber::zeta(order, std::uniform_int_distribution<long>(0, order - 1)(rng));
    RadicalSum x(ctx, {{zeta, std::vector<i64>(ctx.rank(), 0)}});
    for (double eps : {0.01, 0.3, 2.0}) {
      auto g = d_gamma_eps(x, eps);
      CHECK(g.fraction == 1);
      CHECK(g.concyclic);
    }
  }
}

TEST_CASE("marginal_orbit_stats") {
  auto rational = sum(ctx1(3, 4, 5), {{CyclotomicNumber(Rational(2, 3)), {1}}, {CyclotomicNumber(1), {2}}});
  auto stats = marginal_orbit_stats(rational, 0.5);
  for (const auto& row : stats.rows) CHECK(row == stats.average);
  CHECK(stats.eq0);

  auto x = sum(ctx1(2, 2, 3), {{CyclotomicNumber::zeta(3), {0}}, {CyclotomicNumber(1), {1}}});
  stats = marginal_orbit_stats(x, 0.5);
  CHECK(stats.rows.size() == 2);
  CHECK(stats.eq0);
  CHECK(stats.max >= stats.average);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto y = testing::random_radical_sum(rng, 2, 6, 6, 3, 30);
    auto s = marginal_orbit_stats(y, 0.7);
    CHECK(s.eq0);
    CHECK(s.max >= s.average);
  }
}

TEST_CASE("sigma_search") {
  auto root7 = RadicalSum(RadicalContext::make({Rational(3)}, {7}, 7), {{CyclotomicNumber::zeta(7), {0}}});
  equidist::ArcBox full{{equidist::Angle::exact(0), equidist::Angle::exact(1)}};
  CHECK(sigma_search(root7, full, 0.1).size() == 7);

  auto s2 = sum(ctx1(2, 2, 1), {{CyclotomicNumber(1), {1}}});
  CHECK(sigma_search(s2, full, 0.1).empty());

  auto half = sum(ctx1(2, 2, 1), {{Rational(1, 2), {0}}, {Rational(1, 2), {1}}});
  CHECK(sigma_search(half, full, 3.0).size() == 2);
  // the arc around 0 keeps r = 0 only
  equidist::ArcBox near_zero{{equidist::Angle::exact(0), equidist::Angle::exact(Rational(1, 4))}};
  auto found = sigma_search(half, near_zero, 3.0);
  REQUIRE(found.size() == 1);
  CHECK(found[0].r == std::vector<i64>{0});
}

TEST_CASE("normalize_terms") {
  auto ctx = ctx1(2, 2, 1);
  auto a = CyclotomicNumber(Rational(3, 4)), b = CyclotomicNumber(Rational(-1, 5));
  auto x = normalize_terms(sum(ctx, {{a, {1}}, {b, {1}}}));
  REQUIRE(x.terms.size() == 1);
  CHECK(x.terms[0].coeff == a + b);
  CHECK(normalize_terms(sum(ctx, {{a, {1}}, {-a, {1}}})).terms.empty());
  auto once = normalize_terms(sum(ctx, {{a, {0}}, {b, {1}}, {a, {0}}}));
  auto twice = normalize_terms(once);
  CHECK(twice.terms.size() == once.terms.size());
  CHECK(twice == once);
  CHECK(twice.to_string() == once.to_string());
}

TEST_CASE("factor_out_division_point examples") {
  auto ctx = ctx1(2, 6, 1);
  auto x1 = CyclotomicNumber(Rational(2)), x2 = CyclotomicNumber(Rational(-3, 7));
  auto f = factor_out_division_point(sum(ctx, {{x1, {3}}, {x2, {5}}}));
  CHECK(f.y.context.d == std::vector<i64>{3});
  CHECK(f.divisors == std::vector<i64>{2});
  REQUIRE(f.y.terms.size() == 2);
  CHECK(f.y.terms[0].k == std::vector<i64>{0});
  CHECK(f.y.terms[1].k == std::vector<i64>{1});
  CHECK(f.z.terms[0].k == std::vector<i64>{3});
  CHECK(std::abs(f.z.value() - kSqrt2) < 1e-14);

  auto mono = factor_out_division_point(sum(ctx, {{CyclotomicNumber(1), {5}}}));
  CHECK(std::abs(mono.y.value() - 1.0) < 1e-14);
  CHECK(mono.z.terms[0].k == std::vector<i64>{5});

  auto flat = sum(ctx, {{x1, {0}}, {CyclotomicNumber::zeta(6), {0}}});
  auto g = factor_out_division_point(flat);
  CHECK(std::abs(g.y.value() - flat.value()) < 1e-14);
  CHECK(g.z.terms[0].k == std::vector<i64>{0});

  CHECK_THROWS_WITH_AS(factor_out_division_point(sum(ctx, {{x1, {1}}, {-x1, {1}}})), "zero radical sum", Error);
}

TEST_CASE("factor_out_division_point invariants") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    auto x = testing::random_radical_sum(rng);
    if (normalize_terms(x).terms.empty()) continue;
    auto f = factor_out_division_point(x);
    CHECK(std::abs(f.y.value() * f.z.value() - x.value()) < 1e-10 * std::max(1.0, std::abs(x.value())));
    CHECK(f.y.terms.size() == normalize_terms(x).terms.size());
    for (std::size_t l = 0; l < x.context.rank(); ++l) {
      i64 g = f.y.context.d[l];
      for (const auto& t : f.y.terms) {
        CHECK(t.k[l] >= 0);
        g = std::gcd(g, t.k[l]);
      }
      CHECK(g == 1);
    }
  }
}

TEST_CASE("exponent_relation_basis") {
  auto cols = exponent_relation_basis(Column{{2}, {4}}, 8);
  REQUIRE(cols.size() == 1);
  CHECK(cols[0].J == std::vector<std::size_t>{0});
  const auto& rel = cols[0].relations[1];
  CHECK(rel.lambda > 0);
  CHECK((rel.lambda * 4 + rel.mu[0] * 2) % 8 == 0);
  // 2 k_2 - 4 k_1 is a relation, and the least positive lambda is 1
  CHECK(rel.lambda == 1);

  cols = exponent_relation_basis(Column{std::vector<i64>{0}}, 5);
  CHECK(cols[0].J.empty());
  CHECK(cols[0].relations[0].lambda == 1);
  CHECK(cols[0].relations[0].mu.empty());

  cols = exponent_relation_basis(Column{std::vector<i64>{1}}, 7);
  CHECK(cols[0].J == std::vector<std::size_t>{0});
  CHECK(cols[0].relations[0].lambda == 1);

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    i64 m = std::uniform_int_distribution<i64>(2, 30)(rng);
    std::vector<std::vector<i64>> k(4, std::vector<i64>(2));
    for (auto& row : k)
      for (auto& e : row) e = std::uniform_int_distribution<i64>(-40, 40)(rng);
    for (std::size_t l = 0; l < 2; ++l) {
      const auto col = exponent_relation_basis(k, m)[l];
      for (std::size_t j = 0; j < k.size(); ++j) {
        const auto& r = col.relations[j];
        CHECK(r.lambda > 0);
        i64 s = r.lambda * k[j][l];
        for (std::size_t i = 0; i < col.J.size(); ++i) s += r.mu[i] * k[col.J[i]][l];
        CHECK(mod_floor(s, m) == 0);
        // no smaller positive lambda admits a combination through J
        for (i64 lam = 1; lam < r.lambda; ++lam) {
          i64 g = m;
          for (std::size_t i : col.J) g = std::gcd(g, mod_floor(k[i][l], m));
          CHECK(mod_floor(lam * k[j][l], g) != 0);
        }
      }
    }
  }
}

TEST_CASE("energy profile and rearrangement identity") {
  auto root9 = RadicalSum(RadicalContext::make({}, {}, 9), {{CyclotomicNumber::zeta(9), {}}});
  auto p = term_energy_profile(root9, 0.2);
  CHECK(p.energy == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p.term_moduli.size() == 1);
  CHECK(p.identity_holds);

  auto half = sum(ctx1(2, 2, 1), {{Rational(1, 2), {0}}, {Rational(1, 2), {1}}});
  p = term_energy_profile(half, 0.5);
  CHECK(std::abs(p.energy - 0.75) < 1e-14);
  CHECK(p.dgamma.fraction == Rational(1, 2));

  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> xs(std::uniform_int_distribution<int>(1, 6)(rng));
    for (auto& v : xs) v = u(rng);
    auto s = energy_identity(xs, u(rng));
    CHECK(std::abs(s.lhs - s.rhs) < 1e-12 * std::max(1.0, std::abs(s.lhs)));
  }
}

TEST_CASE("text syntax round trip") {
  auto x = parse_radical_sum("(1/2) * z8^1 * 2^(3/6) - 3 * 5^(1/3) + z8^-1");
  CHECK(x.context.generators == std::vector<Rational>{Rational(2), Rational(5)});
  CHECK(x.context.d == std::vector<i64>{6, 3});
  CHECK(x.context.D == 24);
  REQUIRE(x.terms.size() == 3);
  CHECK(x.terms[0].k == std::vector<i64>{3, 0});
  CHECK(x.terms[1].k == std::vector<i64>{0, 1});
  std::complex<double> z8 = std::polar(1.0, 2 * M_PI / 8);
  std::complex<double> expected = 0.5 * z8 * kSqrt2 - 3 * std::cbrt(5.0) + std::conj(z8);
  CHECK(std::abs(x.value() - expected) < 1e-12);
  auto again = parse_radical_sum(x.to_string(), x.context.D);
  CHECK(std::abs(again.value() - x.value()) < 1e-12);
  CHECK_THROWS_AS(parse_radical_sum("2^(1/2"), Error);
  CHECK_THROWS_AS(parse_radical_sum("z^2"), Error);
}
