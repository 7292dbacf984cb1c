#include "endosplit/linalg.hpp"

#include <stdexcept>

namespace endosplit {

namespace {

// Fraction-free forward elimination followed by rational back-substitution.
// Pivots are restricted to the first pivot_col_limit columns, so callers can
// run augmented systems through the same core.
RrefResult rref_core(const QMatrix& m, std::size_t pivot_col_limit) {
  const std::size_t nr = m.rows(), nc = m.cols();
  RrefResult out;
  out.reduced = QMatrix(nr, nc);
  if (nr == 0 || nc == 0) return out;

  // Scale each row to integers; row scaling is itself a row operation, so
  // the reduced form is unchanged.
  std::vector<std::vector<Int>> z(nr, std::vector<Int>(nc));
  for (std::size_t i = 0; i < nr; ++i) {
    Int l(1);
    for (std::size_t j = 0; j < nc; ++j) l = int_lcm(l, m.at(i, j).get_den());
    for (std::size_t j = 0; j < nc; ++j) {
      Rat s = m.at(i, j) * Rat(l);
      z[i][j] = s.get_num();  // denominator is 1 by construction
    }
  }

  Int prev(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_col_limit && r < nr; ++c) {
    std::size_t piv = r;
    while (piv < nr && z[piv][c] == 0) ++piv;
    if (piv == nr) continue;
    if (piv != r) std::swap(z[piv], z[r]);
    const Int p = z[r][c];
    for (std::size_t i = r + 1; i < nr; ++i) {
      if (z[i][c] == 0) {
        // Bareiss still rescales untouched rows to keep divisions exact.
        for (std::size_t j = c + 1; j < nc; ++j)
          z[i][j] = int_divexact(p * z[i][j], prev);
      } else {
        const Int f = z[i][c];
        for (std::size_t j = c + 1; j < nc; ++j)
          z[i][j] = int_divexact(p * z[i][j] - f * z[r][j], prev);
        z[i][c] = 0;
      }
    }
    prev = p;
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.rank = r;

  // Back substitution over rationals on the echelon rows. Rows below the
  // rank keep their residuals: zero in the pivot-eligible block, and the
  // consistency signal (plus the row-operation record) in any augmented part.
  std::vector<QVector> rows(nr, vec_zero(nc));
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) rows[i][j] = Rat(z[i][j]);
  for (std::size_t i = out.rank; i-- > 0;) {
    std::size_t pc = out.pivot_cols[i];
    Rat inv = Rat(1) / rows[i][pc];
    for (std::size_t j = pc; j < nc; ++j) rows[i][j] *= inv;
    for (std::size_t k = 0; k < i; ++k) {
      Rat f = rows[k][pc];
      if (f == 0) continue;
      for (std::size_t j = pc; j < nc; ++j) rows[k][j] -= f * rows[i][j];
    }
  }
  out.reduced = QMatrix::from_rat_rows(rows);
  return out;
}

}  // namespace

RrefResult rref(const QMatrix& m) { return rref_core(m, m.cols()); }

RrefTransformResult rref_with_transform(const QMatrix& m) {
  QMatrix aug = hstack(m, QMatrix::identity(m.rows()));
  RrefResult r = rref_core(aug, m.cols());
  RrefTransformResult out;
  out.pivot_cols = r.pivot_cols;
  out.rank = r.rank;
  out.reduced = QMatrix(m.rows(), m.cols());
  out.transform = QMatrix(m.rows(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out.reduced.at(i, j) = r.reduced.at(i, j);
    for (std::size_t j = 0; j < m.rows(); ++j)
      out.transform.at(i, j) = r.reduced.at(i, m.cols() + j);
  }
  return out;
}

std::size_t rank(const QMatrix& m) { return rref(m).rank; }

QMatrix kernel_basis(const QMatrix& m) {
  RrefResult r = rref(m);
  const std::size_t nc = m.cols();
  std::vector<bool> is_pivot(nc, false);
  for (std::size_t c : r.pivot_cols) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (std::size_t j = 0; j < nc; ++j) {
    if (is_pivot[j]) continue;
    QVector v = vec_zero(nc);
    v[j] = 1;
    for (std::size_t i = 0; i < r.rank; ++i) v[r.pivot_cols[i]] = -r.reduced.at(i, j);
    basis.push_back(std::move(v));
  }
  if (basis.empty()) return QMatrix(nc, 0);
  return QMatrix::from_columns(basis);
}

std::optional<QMatrix> solve_many(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve_many: dimension mismatch");
  RrefResult r = rref_core(hstack(a, b), a.cols());
  // Any nonzero entry of the right block below the pivot rows is inconsistent.
  for (std::size_t i = r.rank; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (r.reduced.at(i, a.cols() + j) != 0) return std::nullopt;
  QMatrix x(a.cols(), b.cols());
  for (std::size_t i = 0; i < r.rank; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      x.at(r.pivot_cols[i], j) = r.reduced.at(i, a.cols() + j);
  return x;
}

std::optional<QVector> solve(const QMatrix& a, const QVector& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve: dimension mismatch");
  auto x = solve_many(a, QMatrix::from_columns({b}));
  if (!x) return std::nullopt;
  return x->col(0);
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse: non-square input");
  RrefResult r = rref_core(hstack(m, QMatrix::identity(m.rows())), m.cols());
  if (r.rank != m.rows()) return std::nullopt;
  QMatrix inv(m.rows(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.rows(); ++j) inv.at(i, j) = r.reduced.at(i, m.cols() + j);
  return inv;
}

QPoly charpoly(const QMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("charpoly: non-square input");
  const std::size_t n = m.rows();
  // Berkowitz: p_r = T_r p_{r-1} where T_r is the lower-triangular Toeplitz
  // matrix built from -a, -R C, -R M C, ... of the r-th leading submatrix.
  // Coefficients kept in descending order, p[0] = 1.
  QVector p{Rat(1)};
  for (std::size_t r = 1; r <= n; ++r) {
    QVector toep(r + 1, Rat(0));
    toep[0] = 1;
    toep[1] = -m.at(r - 1, r - 1);
    if (r >= 2) {
      QVector v(r - 1);  // starts as C, then M C, M^2 C, ...
      for (std::size_t i = 0; i < r - 1; ++i) v[i] = m.at(i, r - 1);
      for (std::size_t k = 2; k <= r; ++k) {
        Rat dot(0);
        for (std::size_t i = 0; i < r - 1; ++i) dot += m.at(r - 1, i) * v[i];
        toep[k] = -dot;
        if (k == r) break;
        QVector w(r - 1, Rat(0));
        for (std::size_t i = 0; i < r - 1; ++i)
          for (std::size_t j = 0; j < r - 1; ++j)
            if (m.at(i, j) != 0) w[i] += m.at(i, j) * v[j];
        v = std::move(w);
      }
    }
    QVector q(r + 1, Rat(0));
    for (std::size_t i = 0; i <= r; ++i)
      for (std::size_t j = 0; j < p.size() && j <= i; ++j)
        if (i - j <= r) q[i] += toep[i - j] * p[j];
    p = std::move(q);
  }
  QVector asc(p.rbegin(), p.rend());
  return QPoly(std::move(asc));
}

QPoly minpoly_matrix(const QMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("minpoly_matrix: non-square input");
  const std::size_t n = m.rows();
  if (n == 0) return QPoly::constant(Rat(1));
  QPoly mp = QPoly::constant(Rat(1));
  for (std::size_t s = 0; s < n; ++s) {
    if (static_cast<std::size_t>(mp.degree()) == n) break;
    QVector v = vec_unit(n, s);
    // Already annihilated by the lcm so far?
    {
      QMatrix pm = mp.eval_matrix(m);
      if (vec_is_zero(pm.apply(v))) continue;
    }
    std::vector<QVector> krylov{v};
    QVector cur = v;
    for (;;) {
      cur = m.apply(cur);
      QMatrix basis = QMatrix::from_columns(krylov);
      auto dep = solve(basis, cur);
      if (dep) {
        QVector coeffs(krylov.size() + 1, Rat(0));
        for (std::size_t i = 0; i < krylov.size(); ++i) coeffs[i] = -(*dep)[i];
        coeffs[krylov.size()] = 1;
        mp = poly_lcm(mp, QPoly(std::move(coeffs)));
        break;
      }
      krylov.push_back(cur);
    }
  }
  return mp.monic();
}

QMatrix integer_eigenspace(const QMatrix& m, long n) {
  if (!m.is_square()) throw std::invalid_argument("integer_eigenspace: non-square input");
  QMatrix shifted = m;
  for (std::size_t i = 0; i < m.rows(); ++i) shifted.at(i, i) -= n;
  return kernel_basis(shifted);
}

QMatrix column_space_basis(const QMatrix& m) {
  RrefResult r = rref(m.transpose());
  std::vector<QVector> cols;
  for (std::size_t i = 0; i < r.rank; ++i) cols.push_back(r.reduced.row(i));
  if (cols.empty()) return QMatrix(m.rows(), 0);
  return QMatrix::from_columns(cols);
}

bool in_column_space(const QMatrix& basis, const QVector& v) {
  return solve(basis, v).has_value();
}

}  // namespace endosplit
