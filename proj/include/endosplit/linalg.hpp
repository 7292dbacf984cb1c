#pragma once

#include <optional>
#include <vector>

#include "endosplit/matrix.hpp"
#include "endosplit/poly.hpp"

namespace endosplit {

struct RrefResult {
  QMatrix reduced;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
};

// Unique reduced row echelon form. Pivot choice: first nonzero entry in
// column order. Internally fraction-free (Bareiss); rationals only at output.
RrefResult rref(const QMatrix& m);

struct RrefTransformResult {
  QMatrix reduced;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  QMatrix transform;  // invertible, transform * m == reduced
};
RrefTransformResult rref_with_transform(const QMatrix& m);

std::size_t rank(const QMatrix& m);

// Columns form a basis of the right kernel {x : m x = 0}.
QMatrix kernel_basis(const QMatrix& m);

// One solution of a x = b, free variables set to zero; empty if inconsistent.
std::optional<QVector> solve(const QMatrix& a, const QVector& b);

// Columnwise solve of a X = B (shared elimination); empty if any column
// is inconsistent.
std::optional<QMatrix> solve_many(const QMatrix& a, const QMatrix& b);

std::optional<QMatrix> inverse(const QMatrix& m);  // throws on non-square

// Monic characteristic polynomial det(t Id - m), Berkowitz (division-free).
QPoly charpoly(const QMatrix& m);

// Monic minimal polynomial via Krylov subspaces.
QPoly minpoly_matrix(const QMatrix& m);

// Basis of ker(m - n Id) as columns.
QMatrix integer_eigenspace(const QMatrix& m, long n);

// Canonical basis of the column space (rref of the transpose, rows as columns).
QMatrix column_space_basis(const QMatrix& m);

// True iff v lies in the column space of basis.
bool in_column_space(const QMatrix& basis, const QVector& v);

}  // namespace endosplit
