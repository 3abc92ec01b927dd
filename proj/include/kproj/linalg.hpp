#pragma once

#include <optional>
#include <vector>

#include "kproj/matrix.hpp"

namespace kproj {

/// Exact linear algebra over the supported rings.
///
/// Everything reduces to one integer routine: a row-echelon (Hermite) form
/// with unimodular transform.  Over Z/n a system A X = B is lifted to the
/// integer system [A | n I] [X; Y] = B and the X part is reduced mod n.
///
/// Pivoting rule (fixes every output bit-for-bit): columns are processed left
/// to right; the first row at or below the current pivot row with a nonzero
/// entry in the column is swapped up, each later nonzero row is folded into
/// the pivot row by an extended-gcd unimodular 2x2 step (or a plain
/// subtraction when the pivot divides it), the pivot is made positive and the
/// entries above it are reduced into [0, pivot).  Free variables of a solution
/// are set to zero.

/// Solve A X = B (Side::Right) or X A = B (Side::Left).  Returns std::nullopt
/// when no solution exists.  Throws DimensionError / RingMismatch.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b, Side side = Side::Right);

/// Generators of the kernel: columns K with A K = 0 (Side::Right) or rows K
/// with K A = 0 (Side::Left).  Over Z the generators form the Hermite basis of
/// the kernel lattice; over Z/n they are the nonzero reductions of the Hermite
/// basis of the preimage lattice, which over F_p is a reduced echelon basis.
Matrix kernel(const Matrix& a, Side side = Side::Right);

/// Canonical generating set of the column span of G (same conventions as
/// kernel()).
Matrix canonical_span(const Matrix& g);

/// True when every column of B lies in the column span of A.
bool in_column_span(const Matrix& a, const Matrix& b);

std::optional<Matrix> inverse(const Matrix& a);

/// Smith normal form data: P A Q = diag(d) with P unimodular over Z.  Only the
/// left transform is kept; it is all the module structure code needs.
struct SmithForm {
  std::vector<Integer> diagonal;  // length rows(A); trailing zeros included
  std::vector<std::vector<Integer>> left;
};
SmithForm smith_form(const std::vector<std::vector<Integer>>& a, std::size_t cols);

}  // namespace kproj
