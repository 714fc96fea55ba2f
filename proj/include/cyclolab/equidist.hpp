#pragma once

// Orbits s -> (zeta_m^{s k_1}, ..., zeta_m^{s k_M}) on the torus: their integer
// character relations, exact Weyl sums and counts inside boxes of arcs.

#include <optional>
#include <string>
#include <vector>

#include "cyclolab/lattice.hpp"
#include "cyclolab/numtheory.hpp"
#include "cyclolab/rational.hpp"

namespace cyclolab::equidist {

struct RootTupleOrbit {
  i64 m = 1;
  std::vector<i64> k;

  RootTupleOrbit() = default;
  RootTupleOrbit(i64 modulus, std::vector<i64> exponents);
};

/// HNF basis of {n in Z^M : n . k = 0 (mod m)}.
IntMatrix relation_lattice(i64 m, const std::vector<i64>& k);

struct StrictnessVerdict {
  bool obstructed = false;
  std::optional<std::vector<i64>> relation;  // a common relation n0 != 0
  i64 search_radius = 0;                      // sup-norm bound of the search
  IntMatrix common_lattice;                   // intersection over the window
  std::string to_string() const;
};

/// Intersects the relation lattices of a window of orbits and looks for a
/// common nonzero relation of sup-norm at most `radius` (default: the smallest
/// modulus minus one, capped so the search box has at most 2e6 points). A
/// heuristic certificate only.
StrictnessVerdict strictness_window(const std::vector<RootTupleOrbit>& window, std::optional<i64> radius = {});

/// r = lcm_j m / gcd(m, k_j), the number of distinct orbit points.
i64 orbit_period(const RootTupleOrbit& orbit);

/// (1/m) |sum_{s=1}^m zeta_m^{s (n . k)}|, which is 1 when m | n . k and 0
/// otherwise. Throws Error("trivial character") for n = 0.
Rational weyl_sum(const RootTupleOrbit& orbit, const std::vector<i64>& n);

/// An angle, optionally known exactly as a rational multiple of pi.
struct Angle {
  double value = 0.0;
  std::optional<Rational> pi_multiple;

  static Angle exact(const Rational& q);
  static Angle approx(double v) { return Angle{v, std::nullopt}; }
  /// "0.5", "pi", "1/4pi", "3pi/2", "-2/3pi".
  static Angle parse(const std::string& text);
};

/// Closed anticlockwise arc [center - half_width, center + half_width].
struct Arc {
  Angle center;
  Angle half_width;
};

using ArcBox = std::vector<Arc>;

/// "x1:eps1,x2:eps2".
ArcBox parse_arc_box(const std::string& text);

/// Normalized Haar measure prod_j min(eps_j / pi, 1).
double haar_measure(const ArcBox& box);

/// Whether the point 2 pi a / m lies on the arc (exact for pi-rational arcs).
bool arc_contains(const Arc& arc, i64 a, i64 m);

struct ArcCountResult {
  i64 count = 0;
  i64 m = 0;
  Rational ratio;
  double haar = 0.0;
  /// (1 - eps)(eps / 2 pi)^M and its verdict, only for a uniform eps.
  std::optional<double> bound;
  std::optional<bool> meets_bound;
};

/// Counts r in 1..m with zeta_m^{r k_j} in arc j for every j. Partitioned over
/// residue ranges when m > 1e6; the count does not depend on `threads`.
ArcCountResult arc_count(const RootTupleOrbit& orbit, const ArcBox& box, int threads = 1);

}  // namespace cyclolab::equidist
