#include "cyclolab/lattice.hpp"

#include <utility>

namespace cyclolab {

namespace {

void axpy(IntRow& target, const BigInt& factor, const IntRow& source) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < target.size(); ++i) target[i] -= factor * source[i];
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Row-reduces `rows` on columns [0, upto) with unimodular operations and
// returns the number of pivot rows. Rows past that count are zero in those
// columns.
std::size_t echelonize(IntMatrix& rows, std::size_t upto) {
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < upto && pivot_row < rows.size(); ++col) {
    for (;;) {
      // smallest nonzero entry in this column at or below pivot_row
      std::size_t best = rows.size();
      for (std::size_t r = pivot_row; r < rows.size(); ++r)
        if (rows[r][col] != 0 && (best == rows.size() || abs(rows[r][col]) < abs(rows[best][col]))) best = r;
      if (best == rows.size()) break;
      std::swap(rows[pivot_row], rows[best]);
      bool done = true;
      for (std::size_t r = pivot_row + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        BigInt q = rows[r][col] / rows[pivot_row][col];  // truncating
        axpy(rows[r], q, rows[pivot_row]);
        if (rows[r][col] != 0) done = false;
      }
      if (done) {
        if (rows[pivot_row][col] < 0)
          for (auto& x : rows[pivot_row]) x = -x;
        for (std::size_t r = 0; r < pivot_row; ++r)
          axpy(rows[r], floor_div(rows[r][col], rows[pivot_row][col]), rows[pivot_row]);
        ++pivot_row;
        break;
      }
    }
  }
  return pivot_row;
}

}  // namespace

IntMatrix hermite_normal_form(IntMatrix rows, std::size_t n) {
  for (const auto& r : rows)
    if (r.size() != n) throw InternalInconsistency("hermite_normal_form: ragged rows");
  std::size_t rank = echelonize(rows, n);
  rows.resize(rank);
  return rows;
}

IntMatrix integer_kernel(const IntMatrix& A, std::size_t n) {
  const std::size_t t = A.size();
  // Row i is (A column i | e_i).
  IntMatrix work(n, IntRow(t + n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < t; ++j) work[i][j] = A[j][i];
    work[i][t + i] = 1;
  }
  std::size_t rank = echelonize(work, t);
  IntMatrix kernel;
  for (std::size_t i = rank; i < n; ++i) kernel.emplace_back(work[i].begin() + static_cast<std::ptrdiff_t>(t), work[i].end());
  return kernel;
}

IntMatrix congruence_lattice(const IntMatrix& A, const std::vector<BigInt>& moduli, std::size_t n) {
  const std::size_t t = A.size();
  if (moduli.size() != t) throw InternalInconsistency("congruence_lattice: modulus count");
  IntMatrix augmented(t, IntRow(n + t));
  for (std::size_t j = 0; j < t; ++j) {
    for (std::size_t i = 0; i < n; ++i) augmented[j][i] = A[j][i];
    augmented[j][n + j] = moduli[j];
  }
  IntMatrix kernel = integer_kernel(augmented, n + t);
  IntMatrix projected;
  for (auto& row : kernel) projected.emplace_back(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n));
  IntMatrix basis = hermite_normal_form(std::move(projected), n);
  if (basis.size() != n) throw InternalInconsistency("congruence_lattice: rank deficient");
  return basis;
}

BigInt echelon_determinant(const IntMatrix& hnf) {
  BigInt det = 1;
  std::size_t col = 0;
  for (const auto& row : hnf) {
    while (col < row.size() && row[col] == 0) ++col;
    if (col == row.size()) return 0;
    det *= row[col];
    ++col;
  }
  if (hnf.empty() || hnf.size() != hnf.front().size()) return 0;
  return abs(det);
}

bool lattice_contains(const IntMatrix& hnf, const std::vector<BigInt>& v) {
  std::vector<BigInt> rest = v;
  for (const auto& row : hnf) {
    std::size_t col = 0;
    while (col < row.size() && row[col] == 0) ++col;
    if (col == row.size()) continue;
    if (rest[col] % row[col] != 0) return false;
    axpy(rest, rest[col] / row[col], row);
  }
  for (const auto& x : rest)
    if (x != 0) return false;
  return true;
}

namespace {

BigInt dot(const IntRow& a, const IntRow& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

BigInt round_div(const BigInt& a, const BigInt& b) {
  // nearest integer to a / b for b > 0
  return floor_div(2 * a + b, 2 * b);
}

}  // namespace

IntMatrix lll_reduce(IntMatrix b) {
  const std::size_t n = b.size();
  if (n <= 1) return b;
  // Integral LLL: d[i] = Gram determinants (d[0] = 1), lambda[k][j] scaled
  // Gram-Schmidt coefficients. Basis index i (1-based) is row b[i-1].
  std::vector<BigInt> d(n + 1);
  std::vector<std::vector<BigInt>> lambda(n + 1, std::vector<BigInt>(n + 1));
  d[0] = 1;
  d[1] = dot(b[0], b[0]);
  if (d[1] == 0) throw InternalInconsistency("lll_reduce: dependent vectors");

  auto red = [&](std::size_t k, std::size_t l) {
    if (2 * abs(lambda[k][l]) <= d[l]) return;
    BigInt q = round_div(lambda[k][l], d[l]);
    axpy(b[k - 1], q, b[l - 1]);
    lambda[k][l] -= q * d[l];
    for (std::size_t i = 1; i < l; ++i) lambda[k][i] -= q * lambda[l][i];
  };
  std::size_t kmax = 1;
  auto swap_rows = [&](std::size_t k) {
    std::swap(b[k - 1], b[k - 2]);
    for (std::size_t j = 1; j + 2 <= k; ++j) std::swap(lambda[k][j], lambda[k - 1][j]);
    BigInt lam = lambda[k][k - 1];
    BigInt B = (d[k - 2] * d[k] + lam * lam) / d[k - 1];
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      BigInt t = lambda[i][k];
      lambda[i][k] = (d[k] * lambda[i][k - 1] - lam * t) / d[k - 1];
      lambda[i][k - 1] = (B * t + lam * lambda[i][k]) / d[k];
    }
    d[k - 1] = B;
  };

  std::size_t k = 2;
  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 1; j <= k; ++j) {
        BigInt u = dot(b[k - 1], b[j - 1]);
        for (std::size_t i = 1; i < j; ++i) u = (d[i] * u - lambda[k][i] * lambda[j][i]) / d[i - 1];
        if (j < k)
          lambda[k][j] = u;
        else
          d[k] = u;
      }
      if (d[k] == 0) throw InternalInconsistency("lll_reduce: dependent vectors");
    }
    red(k, k - 1);
    if (4 * d[k] * d[k - 2] < 3 * d[k - 1] * d[k - 1] - 4 * lambda[k][k - 1] * lambda[k][k - 1]) {
      swap_rows(k);
      if (k > 2) --k;
    } else {
      for (std::size_t l = k - 1; l-- > 1;) red(k, l);
      ++k;
    }
  }
  return b;
}

std::vector<BigInt> to_big(const std::vector<i64>& v) {
  std::vector<BigInt> out;
  out.reserve(v.size());
  for (i64 x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

}  // namespace cyclolab
