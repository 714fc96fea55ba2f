#pragma once

// Random instance generators shared by the unit and acceptance suites.

#include <algorithm>
#include <random>

#include "cyclolab/cyclotomic.hpp"

namespace cyclolab::testing {

inline Rational random_rational(std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> num(-bound, bound);
  std::uniform_int_distribution<int> den(1, bound);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

/// Dense random element of Q(zeta_order) with bounded numerators/denominators.
inline CyclotomicNumber random_cyclotomic(std::mt19937_64& rng, long order, int bound = 10, double density = 0.5) {
  std::bernoulli_distribution keep(density);
  std::vector<Rational> coeffs(static_cast<std::size_t>(order));
  for (auto& c : coeffs)
    if (keep(rng)) c = random_rational(rng, bound);
  return CyclotomicNumber(order, std::move(coeffs));
}

}  // namespace cyclolab::testing

#include "cyclolab/radical.hpp"

namespace cyclolab::testing {

/// Random sum over b <= max_rank distinct prime generators, d_l <= max_d and
/// coefficients in Q(zeta_D0), D0 <= max_D. Contexts whose lifted D exceeds
/// max_context_D are redrawn.
inline radical::RadicalSum random_radical_sum(std::mt19937_64& rng, int max_rank = 2, int max_d = 12, int max_D = 12,
                                              int max_terms = 3, long max_context_D = 132) {
  static const std::vector<long> primes = {2, 3, 5, 7, 11};
  for (;;) {
    std::uniform_int_distribution<int> rank_dist(0, max_rank);
    std::uniform_int_distribution<int> d_dist(1, max_d);
    std::uniform_int_distribution<int> D_dist(1, max_D);
    const int b = rank_dist(rng);
    std::vector<long> pool = primes;
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<Rational> gens;
    std::vector<i64> d;
    for (int l = 0; l < b; ++l) {
      gens.emplace_back(pool[static_cast<std::size_t>(l)]);
      d.push_back(d_dist(rng));
    }
    const long D0 = D_dist(rng);
    i64 lifted = D0;
    for (i64 x : d) lifted = lcm_pos(lifted, x);
    if (lifted > max_context_D) continue;
    auto ctx = radical::RadicalContext::make(gens, d, D0);
    std::uniform_int_distribution<int> count(1, max_terms);
    std::vector<radical::RadicalTerm> terms;
    const int J = count(rng);
    for (int j = 0; j < J; ++j) {
      std::vector<i64> k;
      for (int l = 0; l < b; ++l) k.push_back(std::uniform_int_distribution<i64>(0, d[static_cast<std::size_t>(l)] - 1)(rng));
      terms.push_back({random_cyclotomic(rng, D0, 5, 0.6), k});
    }
    return radical::RadicalSum(std::move(ctx), std::move(terms));
  }
}

}  // namespace cyclolab::testing
