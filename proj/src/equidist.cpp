#include "cyclolab/equidist.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cyclolab/parallel.hpp"

namespace cyclolab::equidist {

RootTupleOrbit::RootTupleOrbit(i64 modulus, std::vector<i64> exponents) : m(modulus), k(std::move(exponents)) {
  if (m < 1) throw Error("modulus m must be positive");
  if (k.empty()) throw Error("exponent vector must be non-empty");
}

IntMatrix relation_lattice(i64 m, const std::vector<i64>& k) {
  if (k.empty()) throw Error("exponent vector must be non-empty");
  if (m < 1) throw Error("modulus m must be positive");
  return congruence_lattice({to_big(k)}, {BigInt(static_cast<long>(m))}, k.size());
}

std::string StrictnessVerdict::to_string() const {
  if (!obstructed) return "no obstruction in window";
  std::ostringstream os;
  os << "obstructed by (";
  for (std::size_t i = 0; i < relation->size(); ++i) os << (i ? ", " : "") << (*relation)[i];
  os << ")";
  return os.str();
}

StrictnessVerdict strictness_window(const std::vector<RootTupleOrbit>& window, std::optional<i64> radius) {
  if (window.size() < 2) throw Error("window size must be at least 2");
  const std::size_t M = window.front().k.size();
  IntMatrix forms;
  std::vector<BigInt> moduli;
  i64 min_m = window.front().m;
  for (const auto& o : window) {
    if (o.k.size() != M) throw Error("all orbits in a window must have the same dimension");
    forms.push_back(to_big(o.k));
    moduli.emplace_back(static_cast<long>(o.m));
    min_m = std::min(min_m, o.m);
  }
  StrictnessVerdict verdict;
  verdict.common_lattice = congruence_lattice(forms, moduli, M);

  i64 B = radius ? *radius : std::max<i64>(min_m - 1, 0);
  const double cap = std::floor((std::pow(2e6, 1.0 / static_cast<double>(M)) - 1.0) / 2.0);
  if (!radius) B = std::min<i64>(B, static_cast<i64>(cap));
  verdict.search_radius = B;
  if (B < 1) return verdict;

  // Enumerate the box in order of increasing sup-norm, lexicographically.
  std::vector<i64> n(M);
  auto is_relation = [&](const std::vector<i64>& v) {
    for (const auto& o : window) {
      __int128 dot = 0;
      for (std::size_t j = 0; j < M; ++j) dot += static_cast<__int128>(v[j]) * o.k[j];
      if (dot % o.m != 0) return false;
    }
    return true;
  };
  for (i64 norm = 1; norm <= B; ++norm) {
    std::fill(n.begin(), n.end(), -norm);
    for (;;) {
      i64 sup = 0;
      for (i64 x : n) sup = std::max(sup, std::abs(x));
      if (sup == norm && is_relation(n)) {
        verdict.obstructed = true;
        verdict.relation = n;
        return verdict;
      }
      std::size_t j = 0;
      while (j < M && n[j] == norm) n[j++] = -norm;
      if (j == M) break;
      ++n[j];
    }
  }
  return verdict;
}

i64 orbit_period(const RootTupleOrbit& orbit) {
  i64 r = 1;
  for (i64 kj : orbit.k) r = lcm_pos(r, orbit.m / gcd_abs(orbit.m, kj));
  return r;
}

Rational weyl_sum(const RootTupleOrbit& orbit, const std::vector<i64>& n) {
  if (n.size() != orbit.k.size()) throw Error("character dimension mismatch");
  if (std::all_of(n.begin(), n.end(), [](i64 x) { return x == 0; })) throw Error("trivial character");
  __int128 dot = 0;
  for (std::size_t j = 0; j < n.size(); ++j) dot += static_cast<__int128>(n[j]) * orbit.k[j];
  return Rational(dot % orbit.m == 0 ? 1 : 0);
}

Angle Angle::exact(const Rational& q) { return Angle{q.get_d() * std::numbers::pi, q}; }

Angle Angle::parse(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  auto fail = [&]() -> Angle { throw Error("malformed angle: '" + raw + "'"); };
  if (s.empty()) return fail();
  auto pos = s.find("pi");
  if (pos == std::string::npos) {
    // Plain decimals are radians; only 0 is kept exactly.
    try {
      std::size_t used = 0;
      double v = std::stod(s, &used);
      if (used != s.size()) return fail();
      if (v == 0.0) return exact(Rational(0));
      return approx(v);
    } catch (const std::logic_error&) {
      return fail();
    }
  }
  std::string before = s.substr(0, pos), after = s.substr(pos + 2);
  Rational q = 1;
  if (!before.empty() && before != "+" && before != "-") {
    if (before.back() == '*') before.pop_back();
    q = parse_rational(before);
  } else if (before == "-") {
    q = -1;
  }
  if (!after.empty()) {
    if (after[0] != '/') return fail();
    Rational den = parse_rational(after.substr(1));
    if (den == 0) throw Error("division by zero");
    q /= den;
  }
  return exact(q);
}

ArcBox parse_arc_box(const std::string& text) {
  ArcBox box;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw Error("malformed arc '" + item + "': expected center:half_width");
    Arc arc{Angle::parse(item.substr(0, colon)), Angle::parse(item.substr(colon + 1))};
    if (!(arc.half_width.value > 0)) throw Error("arc half-width must be positive");
    box.push_back(arc);
  }
  if (box.empty()) throw Error("empty arc box");
  return box;
}

double haar_measure(const ArcBox& box) {
  double h = 1.0;
  for (const auto& arc : box) h *= std::min(arc.half_width.value / std::numbers::pi, 1.0);
  return h;
}

namespace {

using i128 = __int128;

i128 mod_floor128(i128 a, i128 b) {
  i128 r = a % b;
  return r < 0 ? r + b : r;
}

i128 to_i128(const BigInt& z) {
  if (!z.fits_slong_p()) throw Error("arc endpoint denominator too large");
  return static_cast<i128>(z.get_si());
}

// Membership test for one coordinate, given the residue a = r k mod m.
struct ArcTest {
  bool full = false;
  bool exact = false;
  // exact mode, everything scaled to a common denominator: point 2a/m -> a * scale
  i128 scale = 0, lo = 0, width = 0, period = 0;
  // double mode
  double lo_angle = 0.0, width_angle = 0.0;
  i64 m = 1;

  ArcTest(const Arc& arc, i64 modulus) : m(modulus) {
    if (arc.half_width.value >= std::numbers::pi) {
      full = true;
      return;
    }
    if (arc.center.pi_multiple && arc.half_width.pi_multiple) {
      exact = true;
      // Angles in units of pi: point 2a/m, lo = c - e, width 2e, period 2.
      Rational lo_q = *arc.center.pi_multiple - *arc.half_width.pi_multiple;
      Rational w_q = 2 * *arc.half_width.pi_multiple;
      BigInt D = lcm(lcm(BigInt(static_cast<long>(m)), lo_q.get_den()), w_q.get_den());
      scale = to_i128(2 * D / static_cast<long>(m));
      lo = to_i128(lo_q.get_num() * (D / lo_q.get_den()));
      width = to_i128(w_q.get_num() * (D / w_q.get_den()));
      period = to_i128(2 * D);
      return;
    }
    lo_angle = arc.center.value - arc.half_width.value;
    width_angle = 2 * arc.half_width.value;
  }

  bool contains(i64 a) const {
    if (full) return true;
    if (exact) return mod_floor128(static_cast<i128>(a) * scale - lo, period) <= width;
    constexpr double two_pi = 2 * std::numbers::pi;
    constexpr double tol = 1e-12;
    double theta = two_pi * static_cast<double>(a) / static_cast<double>(m);
    double diff = std::fmod(theta - lo_angle, two_pi);
    if (diff < 0) diff += two_pi;
    return diff <= width_angle + tol || diff >= two_pi - tol;
  }
};

}  // namespace

bool arc_contains(const Arc& arc, i64 a, i64 m) {
  if (m < 1) throw Error("modulus m must be positive");
  return ArcTest(arc, m).contains(mod_floor(a, m));
}

ArcCountResult arc_count(const RootTupleOrbit& orbit, const ArcBox& box, int threads) {
  if (box.size() != orbit.k.size()) throw Error("arc box dimension does not match the orbit");
  std::vector<ArcTest> tests;
  for (const auto& arc : box) tests.emplace_back(arc, orbit.m);
  std::vector<i64> step(orbit.k.size());
  for (std::size_t j = 0; j < step.size(); ++j) step[j] = mod_floor(orbit.k[j], orbit.m);

  auto count_range = [&](i64 lo, i64 hi) {
    i64 count = 0;
    for (i64 r = lo; r <= hi; ++r) {
      bool inside = true;
      for (std::size_t j = 0; j < step.size() && inside; ++j)
        inside = tests[j].contains(static_cast<i64>(static_cast<i128>(r) * step[j] % orbit.m));
      if (inside) ++count;
    }
    return count;
  };

  ArcCountResult result;
  result.m = orbit.m;
  if (orbit.m > 1000000 && threads > 1) {
    const std::size_t blocks = static_cast<std::size_t>(threads) * 8;
    std::vector<i64> partial(blocks, 0);
    const i64 width = (orbit.m + static_cast<i64>(blocks) - 1) / static_cast<i64>(blocks);
    parallel_for(blocks, threads, [&](std::size_t b) {
      i64 lo = 1 + static_cast<i64>(b) * width;
      i64 hi = std::min(orbit.m, lo + width - 1);
      if (lo <= hi) partial[b] = count_range(lo, hi);
    });
    for (i64 c : partial) result.count += c;
  } else {
    result.count = count_range(1, orbit.m);
  }
  result.ratio = Rational(BigInt(static_cast<long>(result.count)), BigInt(static_cast<long>(orbit.m)));
  result.ratio.canonicalize();
  result.haar = haar_measure(box);
  bool uniform = std::all_of(box.begin(), box.end(),
                             [&](const Arc& a) { return a.half_width.value == box.front().half_width.value; });
  if (uniform) {
    double eps = box.front().half_width.value;
    double bound = (1 - eps) * std::pow(eps / (2 * std::numbers::pi), static_cast<double>(box.size()));
    result.bound = bound;
    result.meets_bound = result.ratio.get_d() >= bound;
  }
  return result;
}

}  // namespace cyclolab::equidist
