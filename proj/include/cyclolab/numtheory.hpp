#pragma once

// Small integer helpers shared by every module.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cyclolab {

/// Base error for contract violations on user input. Messages are stable and
/// tested verbatim.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a postcondition that should hold by construction fails.
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using i64 = std::int64_t;

inline i64 mod_floor(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline i64 gcd_abs(i64 a, i64 b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

inline i64 lcm_pos(i64 a, i64 b) {
  if (a == 0 || b == 0) return 0;
  return (a / gcd_abs(a, b)) * b;
}

/// Euler's totient.
i64 euler_phi(i64 n);

/// Prime factorization by trial division, as (prime, exponent) pairs ascending.
std::vector<std::pair<i64, int>> factorize(i64 n);

/// All positive divisors of n, ascending.
std::vector<i64> divisors(i64 n);

/// Units of Z/nZ in ascending order (n = 1 gives {0}).
std::vector<i64> units_mod(i64 n);

int valuation(i64 n, i64 p);

/// Extended gcd: returns g and sets x, y with a*x + b*y = g >= 0.
i64 ext_gcd(i64 a, i64 b, i64& x, i64& y);

/// Parse "0,1,5" style integer lists.
std::vector<i64> parse_int_list(const std::string& text);

}  // namespace cyclolab
