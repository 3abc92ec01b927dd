#include "kproj/linalg.hpp"

#include <algorithm>
#include <utility>

namespace kproj {

namespace {

using Row = std::vector<Integer>;
using Rows = std::vector<Row>;

// a <- a - q b
void axpy(Row& a, const Integer& q, const Row& b) {
  if (q == 0) return;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (b[k] != 0) a[k] -= q * b[k];
}

// (a, b) <- (s a + t b, u a + v b)
void combine(Row& a, Row& b, const Integer& s, const Integer& t, const Integer& u, const Integer& v) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == 0 && b[k] == 0) continue;
    Integer na = s * a[k] + t * b[k];
    Integer nb = u * a[k] + v * b[k];
    a[k] = std::move(na);
    b[k] = std::move(nb);
  }
}

void negate(Row& a) {
  for (auto& x : a) x = -x;
}

struct Echelon {
  Rows rows;        // echelon form; first `pivots.size()` rows nonzero
  Rows transform;   // transform * input == rows (empty unless requested)
  std::vector<std::size_t> pivots;
};

Echelon row_echelon(Rows t, std::size_t ncols, bool with_transform) {
  Echelon out;
  const std::size_t n = t.size();
  Rows v;
  if (with_transform) {
    v.assign(n, Row(n, 0));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1;
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < n; ++c) {
    std::size_t first = r;
    while (first < n && t[first][c] == 0) ++first;
    if (first == n) continue;
    if (first != r) {
      std::swap(t[first], t[r]);
      if (with_transform) std::swap(v[first], v[r]);
    }
    for (std::size_t i = r + 1; i < n; ++i) {
      if (t[i][c] == 0) continue;
      const Integer a = t[r][c];
      const Integer b = t[i][c];
      if (b % a == 0) {
        Integer q = b / a;
        axpy(t[i], q, t[r]);
        if (with_transform) axpy(v[i], q, v[r]);
        continue;
      }
      Integer s, u;
      Integer g = extended_gcd(a, b, s, u);
      Integer ag = a / g, bg = b / g;
      combine(t[r], t[i], s, u, -bg, ag);
      if (with_transform) combine(v[r], v[i], s, u, -bg, ag);
    }
    if (t[r][c] < 0) {
      negate(t[r]);
      if (with_transform) negate(v[r]);
    }
    for (std::size_t k = 0; k < r; ++k) {
      if (t[k][c] == 0) continue;
      Integer q = floor_div(t[k][c], t[r][c]);
      axpy(t[k], q, t[r]);
      if (with_transform) axpy(v[k], q, v[r]);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rows = std::move(t);
  out.transform = std::move(v);
  return out;
}

Rows to_rows(const Matrix& m) {
  Rows r(m.rows(), Row(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = m(i, j);
  return r;
}

// Columns of A (m x k) become rows of the transposed integer system; over Z/n
// the lifted matrix [A | n I_m] is used.
Rows lifted_transpose(const Matrix& a) {
  const std::size_t m = a.rows(), k = a.cols();
  const auto n = a.ring().modulus();
  const std::size_t extra = a.ring().is_integers() ? 0 : m;
  Rows t(k + extra, Row(m, 0));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < m; ++i) t[j][i] = a(i, j);
  for (std::size_t i = 0; i < extra; ++i) t[k + i][i] = n;
  return t;
}

// Integer kernel lattice of the integer matrix whose transpose is `t`
// (rows of the result have length t.size()).
Rows integer_kernel_rows(const Rows& t, std::size_t m) {
  Echelon e = row_echelon(t, m, true);
  Rows ker(e.transform.begin() + static_cast<std::ptrdiff_t>(e.pivots.size()), e.transform.end());
  return ker;
}

Matrix columns_from_rows(const Ring& ring, const Rows& rows, std::size_t len) {
  Matrix out(ring, len, rows.size());
  for (std::size_t j = 0; j < rows.size(); ++j)
    for (std::size_t i = 0; i < len; ++i) out.set(i, j, rows[j][i]);
  return out;
}

// Hermite basis of the lattice spanned by `rows` (+ n Z^len over Z/n), reduced
// into the ring, zero rows dropped.
Rows canonical_rows(const Ring& ring, Rows rows, std::size_t len) {
  if (!ring.is_integers()) {
    for (std::size_t i = 0; i < len; ++i) {
      Row r(len, 0);
      r[i] = ring.modulus();
      rows.push_back(std::move(r));
    }
  }
  Echelon e = row_echelon(std::move(rows), len, false);
  Rows out;
  for (std::size_t k = 0; k < e.pivots.size(); ++k) {
    Row r = e.rows[k];
    bool nonzero = false;
    for (auto& x : r) {
      x = ring.normalize(x);
      nonzero = nonzero || x != 0;
    }
    if (nonzero) out.push_back(std::move(r));
  }
  return out;
}

std::optional<Matrix> solve_right(const Matrix& a, const Matrix& b) {
  require_same_ring(a.ring(), b.ring(), "solve");
  if (a.rows() != b.rows()) throw DimensionError("solve: A and B have different row counts");
  const Ring& ring = a.ring();
  const std::size_t m = a.rows(), k = a.cols();
  Matrix x(ring, k, b.cols());
  if (b.cols() == 0) return x;
  Echelon e = row_echelon(lifted_transpose(a), m, true);
  for (std::size_t col = 0; col < b.cols(); ++col) {
    Row residual(m);
    for (std::size_t i = 0; i < m; ++i) residual[i] = b(i, col);
    Row y(e.rows.size(), 0);
    for (std::size_t p = 0; p < e.pivots.size(); ++p) {
      const std::size_t c = e.pivots[p];
      const Integer& piv = e.rows[p][c];
      if (residual[c] % piv != 0) return std::nullopt;
      y[p] = residual[c] / piv;
      axpy(residual, y[p], e.rows[p]);
    }
    for (const auto& r : residual)
      if (r != 0) return std::nullopt;
    for (std::size_t j = 0; j < k; ++j) {
      Integer acc = 0;
      for (std::size_t p = 0; p < e.pivots.size(); ++p)
        if (y[p] != 0) acc += y[p] * e.transform[p][j];
      x.set(j, col, acc);
    }
  }
  return x;
}

}  // namespace

std::optional<Matrix> solve(const Matrix& a, const Matrix& b, Side side) {
  if (side == Side::Right) return solve_right(a, b);
  auto xt = solve_right(a.transpose(), b.transpose());
  if (!xt) return std::nullopt;
  return xt->transpose();
}

Matrix kernel(const Matrix& a, Side side) {
  if (side == Side::Left) return kernel(a.transpose(), Side::Right).transpose();
  const Ring& ring = a.ring();
  const std::size_t k = a.cols();
  Rows ker = integer_kernel_rows(lifted_transpose(a), a.rows());
  for (auto& r : ker) r.resize(k);  // drop the lifting coordinates
  return columns_from_rows(ring, canonical_rows(ring, std::move(ker), k), k);
}

Matrix canonical_span(const Matrix& g) {
  Rows rows = to_rows(g.transpose());
  return columns_from_rows(g.ring(), canonical_rows(g.ring(), std::move(rows), g.rows()), g.rows());
}

bool in_column_span(const Matrix& a, const Matrix& b) { return solve(a, b).has_value(); }

std::optional<Matrix> inverse(const Matrix& a) {
  if (!a.is_square()) return std::nullopt;
  auto x = solve(a, Matrix::identity(a.ring(), a.rows()));
  if (!x) return std::nullopt;
  // Over commutative rings a one-sided inverse of a square matrix is two-sided.
  return x;
}

SmithForm smith_form(const std::vector<std::vector<Integer>>& input, std::size_t cols) {
  Rows a = input;
  const std::size_t m = a.size();
  Rows p(m, Row(m, 0));
  for (std::size_t i = 0; i < m; ++i) p[i][i] = 1;

  auto abs_less = [](const Integer& x, const Integer& y) { return abs(x) < abs(y); };
  for (std::size_t t = 0; t < std::min(m, cols); ++t) {
    while (true) {
      // smallest nonzero entry of the trailing block
      std::size_t bi = m, bj = cols;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (bi == m || abs_less(a[i][j], a[bi][bj]))) {
            bi = i;
            bj = j;
          }
      if (bi == m) goto done;
      if (bi != t) {
        std::swap(a[bi], a[t]);
        std::swap(p[bi], p[t]);
      }
      if (bj != t)
        for (auto& row : a) std::swap(row[bj], row[t]);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        Integer q = a[i][t] / a[t][t];
        axpy(a[i], q, a[t]);
        axpy(p[i], q, p[t]);
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        Integer q = a[t][j] / a[t][t];
        for (std::size_t i = 0; i < m; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      axpy(a[t], Integer(-1), a[bad]);
      axpy(p[t], Integer(-1), p[bad]);
    }
    if (a[t][t] < 0) {
      negate(a[t]);
      negate(p[t]);
    }
  }
done:
  SmithForm out;
  out.diagonal.assign(m, 0);
  for (std::size_t i = 0; i < std::min(m, cols); ++i) out.diagonal[i] = a[i][i];
  out.left = std::move(p);
  return out;
}

}  // namespace kproj
