#pragma once

// Integer lattices in Z^n, stored as row bases over arbitrary-precision
// integers.

#include <vector>

#include "cyclolab/numtheory.hpp"
#include "cyclolab/rational.hpp"

namespace cyclolab {

using IntRow = std::vector<BigInt>;
using IntMatrix = std::vector<IntRow>;

/// Row Hermite normal form of the lattice generated by `rows` (all of length
/// n). The result has no zero rows, is upper echelon, pivots are positive and
/// entries above each pivot lie in [0, pivot).
IntMatrix hermite_normal_form(IntMatrix rows, std::size_t n);

/// Basis of {x in Z^n : A x = 0} where A has `rows` as its linear forms.
IntMatrix integer_kernel(const IntMatrix& A, std::size_t n);

/// HNF basis of {x in Z^n : A x = 0 (mod moduli)} row by row. Always full
/// rank since prod(moduli) Z^n lies inside.
IntMatrix congruence_lattice(const IntMatrix& A, const std::vector<BigInt>& moduli, std::size_t n);

/// Absolute determinant of a square upper-echelon basis.
BigInt echelon_determinant(const IntMatrix& hnf);

/// Membership test against an HNF basis by back substitution.
bool lattice_contains(const IntMatrix& hnf, const std::vector<BigInt>& v);

/// LLL reduction (delta = 3/4) of linearly independent rows, in exact integer
/// arithmetic.
IntMatrix lll_reduce(IntMatrix basis);

std::vector<BigInt> to_big(const std::vector<i64>& v);

}  // namespace cyclolab
