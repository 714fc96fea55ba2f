#include "cyclolab/numtheory.hpp"

#include <algorithm>
#include <charconv>
#include <tuple>

namespace cyclolab {

std::vector<std::pair<i64, int>> factorize(i64 n) {
  if (n < 0) n = -n;
  std::vector<std::pair<i64, int>> out;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

i64 euler_phi(i64 n) {
  if (n <= 0) throw Error("euler_phi: non-positive argument");
  i64 result = n;
  for (auto [p, e] : factorize(n)) result = result / p * (p - 1);
  return result;
}

std::vector<i64> divisors(i64 n) {
  std::vector<i64> out;
  for (i64 k = 1; k * k <= n; ++k) {
    if (n % k != 0) continue;
    out.push_back(k);
    if (k * k != n) out.push_back(n / k);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<i64> units_mod(i64 n) {
  std::vector<i64> out;
  if (n == 1) return {0};
  for (i64 t = 1; t < n; ++t)
    if (std::gcd(t, n) == 1) out.push_back(t);
  return out;
}

int valuation(i64 n, i64 p) {
  if (n == 0) return 64;
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
  i64 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    i64 q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

std::vector<i64> parse_int_list(const std::string& text) {
  std::vector<i64> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::string token = text.substr(pos, comma - pos);
    token.erase(0, token.find_first_not_of(" \t"));
    token.erase(token.find_last_not_of(" \t") + 1);
    if (token.empty()) throw Error("malformed integer list: '" + text + "'");
    i64 value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
      throw Error("malformed integer list: '" + text + "'");
    out.push_back(value);
    pos = comma + 1;
  }
  return out;
}

}  // namespace cyclolab
