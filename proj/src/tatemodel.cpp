#include "endosplit/tatemodel.hpp"

#include <sstream>
#include <stdexcept>

namespace endosplit {

QMatrix TateRepModel::rho_of(const AlgebraElement& u) const {
  if (u.size() != algebra.dim) throw std::invalid_argument("rho_of: wrong length");
  QMatrix m(2 * g, 2 * g);
  for (std::size_t i = 0; i < algebra.dim; ++i)
    if (u[i] != 0) m = m + rho[i].scaled(u[i]);
  return m;
}

std::optional<std::string> TateRepModel::validate() const {
  if (rho.size() != algebra.dim) return "rho: one matrix per basis element required";
  for (const QMatrix& m : rho)
    if (m.rows() != 2 * g || m.cols() != 2 * g) return "rho: matrices must have size 2g";
  if (!rho_of(algebra.unit).is_identity()) return "rho(1) is not the identity";
  for (std::size_t i = 0; i < algebra.dim; ++i)
    for (std::size_t j = 0; j < algebra.dim; ++j) {
      if (rho[i] * rho[j] != rho_of(algebra.product_coords(i, j))) {
        std::ostringstream os;
        os << "rho not multiplicative at basis pair (" << i << "," << j << ")";
        return os.str();
      }
    }
  // Injectivity: the coordinates-to-operator map has full rank.
  QMatrix flat(4 * static_cast<std::size_t>(g) * g, algebra.dim);
  for (std::size_t i = 0; i < algebra.dim; ++i)
    for (std::size_t r = 0; r < 2 * g; ++r)
      for (std::size_t c = 0; c < 2 * g; ++c)
        flat.at(r * 2 * g + c, i) = rho[i].at(r, c);
  if (rank(flat) != algebra.dim) return "rho is not injective";
  return std::nullopt;
}

QMatrix regular_matrix(const StructureAlgebra& k_field, const AlgebraElement& u) {
  if (u.size() != k_field.dim) throw std::invalid_argument("regular_matrix: u outside the field");
  return k_field.left_regular(u);
}

TateMatrix tate_matrix_field(const StructureAlgebra& k_field, unsigned g,
                             const AlgebraElement& u) {
  const std::size_t d = k_field.dim;
  if (d == 0 || (2ul * g) % d != 0)
    throw std::invalid_argument("tate_matrix_field: field degree does not divide 2g");
  std::size_t h = (2ul * g) / d;
  QMatrix m0 = regular_matrix(k_field, u);
  std::vector<QMatrix> blocks(h, m0);
  TateMatrix t;
  t.matrix = block_diag(blocks);
  t.charpoly = charpoly(t.matrix);
  return t;
}

TateMatrix tate_matrix_matrixalg(const StructureAlgebra& k_field, unsigned m, unsigned g,
                                 const std::vector<AlgebraElement>& u_table) {
  if (m == 0 || u_table.size() != static_cast<std::size_t>(m) * m)
    throw std::invalid_argument("tate_matrix_matrixalg: table must be m x m");
  if ((2ul * g) % m != 0)
    throw std::invalid_argument("tate_matrix_matrixalg: m does not divide 2g");
  std::size_t per_copy = (2ul * g) / m;  // each copy contributes 2g/m
  const std::size_t d = k_field.dim;
  if (d == 0 || per_copy % d != 0)
    throw std::invalid_argument("tate_matrix_matrixalg: field degree does not divide 2g/m");
  std::size_t h = per_copy / d;
  QMatrix out(2ul * g, 2ul * g);
  for (unsigned i = 0; i < m; ++i)
    for (unsigned j = 0; j < m; ++j) {
      QMatrix m0 = regular_matrix(k_field, u_table[i * m + j]);
      for (std::size_t copy = 0; copy < h; ++copy)
        for (std::size_t r = 0; r < d; ++r)
          for (std::size_t c = 0; c < d; ++c)
            out.at(i * per_copy + copy * d + r, j * per_copy + copy * d + c) = m0.at(r, c);
    }
  TateMatrix t;
  t.matrix = out;
  t.charpoly = charpoly(out);
  return t;
}

namespace {

// Decomposes u in C along the factor spans; per factor returns the m x m
// table of field elements (coordinates in the factor's field basis).
std::vector<std::vector<AlgebraElement>> factor_tables(const SplittableCertificate& cert,
                                                       const AlgebraElement& u) {
  const StructureAlgebra& a = cert.ambient;
  std::vector<QVector> cols;
  struct Slot {
    std::size_t factor, j, l, kappa;
  };
  std::vector<Slot> slots;
  for (std::size_t fi = 0; fi < cert.factors.size(); ++fi) {
    const CertFactor& fac = cert.factors[fi];
    const unsigned m = fac.size;
    for (unsigned j = 0; j < m; ++j)
      for (unsigned l = 0; l < m; ++l)
        for (std::size_t kk = 0; kk < fac.field_basis.cols(); ++kk) {
          cols.push_back(a.mul(fac.field_basis.col(kk), fac.units[j * m + l]));
          slots.push_back({fi, j, l, kk});
        }
  }
  auto coords = solve(QMatrix::from_columns(cols), u);
  if (!coords)
    throw std::invalid_argument("tate_matrix_semisimple: u does not lie in C");
  std::vector<std::vector<AlgebraElement>> tables;
  for (const CertFactor& fac : cert.factors) {
    std::vector<AlgebraElement> table(static_cast<std::size_t>(fac.size) * fac.size,
                                      vec_zero(fac.field_basis.cols()));
    tables.push_back(std::move(table));
  }
  for (std::size_t t = 0; t < slots.size(); ++t) {
    const Slot& s = slots[t];
    tables[s.factor][s.j * cert.factors[s.factor].size + s.l][s.kappa] = (*coords)[t];
  }
  return tables;
}

// The factor's field as a standalone structure-constant algebra in the
// basis given by field_basis columns.
StructureAlgebra field_as_algebra(const StructureAlgebra& ambient, const CertFactor& fac) {
  std::vector<AlgebraElement> span;
  for (std::size_t j = 0; j < fac.field_basis.cols(); ++j)
    span.push_back(fac.field_basis.col(j));
  // field_basis columns are independent; induced constants via solves.
  const std::size_t d = span.size();
  StructureAlgebra k;
  k.dim = d;
  k.constants.assign(d * d, vec_zero(d));
  QMatrix basis = fac.field_basis;
  QMatrix products(ambient.dim, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      products.set_col(i * d + j, ambient.mul(span[i], span[j]));
  auto coords = solve_many(basis, products);
  if (!coords) throw std::invalid_argument("factor field basis not closed");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) k.constants[i * d + j] = coords->col(i * d + j);
  AlgebraElement block_unit = vec_zero(ambient.dim);
  for (unsigned j = 0; j < fac.size; ++j)
    block_unit = vec_add(block_unit, fac.units[j * fac.size + j]);
  auto unit = solve(basis, block_unit);
  if (!unit) throw std::invalid_argument("factor field has no unit in its span");
  k.unit = *unit;
  return k;
}

}  // namespace

TateMatrix tate_matrix_semisimple(const SplittableCertificate& cert,
                                  const MultiplicityPlan& plan, const AlgebraElement& u) {
  if (plan.copies.size() != cert.factors.size())
    throw std::invalid_argument("tate_matrix_semisimple: plan size mismatch");
  unsigned long two_g = 0;
  for (std::size_t i = 0; i < cert.factors.size(); ++i) {
    const CertFactor& fac = cert.factors[i];
    if (plan.copies[i] == 0)
      throw std::invalid_argument("tate_matrix_semisimple: zero multiplicity");
    two_g += static_cast<unsigned long>(plan.copies[i]) * fac.size * fac.field_basis.cols();
  }
  if (two_g == 0 || two_g % 2 != 0)
    throw std::invalid_argument("tate_matrix_semisimple: plan does not give an even dimension");

  std::vector<std::vector<AlgebraElement>> tables = factor_tables(cert, u);
  std::vector<QMatrix> blocks;
  for (std::size_t i = 0; i < cert.factors.size(); ++i) {
    const CertFactor& fac = cert.factors[i];
    StructureAlgebra kf = field_as_algebra(cert.ambient, fac);
    unsigned long md = static_cast<unsigned long>(fac.size) * kf.dim;
    // One copy of the standard module: block of size m*d, field index
    // varying fastest.
    QMatrix one(md, md);
    for (unsigned r = 0; r < fac.size; ++r)
      for (unsigned c = 0; c < fac.size; ++c) {
        QMatrix m0 = regular_matrix(kf, tables[i][r * fac.size + c]);
        for (std::size_t x = 0; x < kf.dim; ++x)
          for (std::size_t y = 0; y < kf.dim; ++y)
            one.at(r * kf.dim + x, c * kf.dim + y) = m0.at(x, y);
      }
    for (unsigned copy = 0; copy < plan.copies[i]; ++copy) blocks.push_back(one);
  }
  TateMatrix t;
  t.matrix = block_diag(blocks);
  t.charpoly = charpoly(t.matrix);
  return t;
}

bool weil_integrality_check(const TateMatrix& t, bool integral_claim) {
  bool matrix_integral = t.matrix.is_integral();
  bool charpoly_integral = t.charpoly.is_integral();
  if (integral_claim) return matrix_integral && charpoly_integral;
  return !matrix_integral || charpoly_integral;
}

void VerifierReport::add(const std::string& name, bool line_ok, const std::string& detail) {
  lines.push_back({name, line_ok, detail});
  ok = ok && line_ok;
}

long default_denominator_clearer(const TateRepModel& model) {
  Int n(1);
  for (const QMatrix& m : model.rho)
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) n = int_lcm(n, m.at(i, j).get_den());
  if (!n.fits_slong_p())
    throw std::invalid_argument("default_denominator_clearer: N too large");
  return n.get_si();
}

VerifierReport split_representation(const TateRepModel& model,
                                    const std::vector<AlgebraElement>& idempotents, long N) {
  VerifierReport rep;
  const StructureAlgebra& a = model.algebra;
  if (N <= 0) throw std::invalid_argument("split_representation: N must be positive");

  // Idempotent axioms.
  AlgebraElement total = vec_zero(a.dim);
  bool axioms = true;
  for (std::size_t i = 0; i < idempotents.size(); ++i) {
    const AlgebraElement& e = idempotents[i];
    if (a.mul(e, e) != e) axioms = false;
    for (std::size_t j = 0; j < idempotents.size(); ++j)
      if (i != j && !vec_is_zero(a.mul(e, idempotents[j]))) axioms = false;
    for (std::size_t b = 0; b < a.dim; ++b) {
      AlgebraElement bb = vec_unit(a.dim, b);
      if (a.mul(e, bb) != a.mul(bb, e)) axioms = false;
    }
    total = vec_add(total, e);
  }
  axioms = axioms && (total == a.unit);
  if (!axioms) throw std::invalid_argument("split_representation: idempotent axioms fail");

  // N must clear denominators of every rho(N e_i).
  std::vector<QMatrix> rho_ne;
  for (const AlgebraElement& e : idempotents)
    rho_ne.push_back(model.rho_of(e).scaled(Rat(N)));
  for (const QMatrix& m : rho_ne)
    if (!m.is_integral())
      throw std::invalid_argument("split_representation: N does not clear denominators");

  // W_i = column space of rho(N e_i); S = [B_1 | ... | B_r].
  std::vector<QMatrix> w_basis;
  for (const QMatrix& m : rho_ne) w_basis.push_back(column_space_basis(m));
  QMatrix s_mat = w_basis.front();
  for (std::size_t i = 1; i < w_basis.size(); ++i) s_mat = hstack(s_mat, w_basis[i]);
  bool square = s_mat.rows() == s_mat.cols();
  rep.add("S square (sum of W_i dims = 2g)", square);
  std::optional<QMatrix> s_inv;
  if (square) s_inv = inverse(s_mat);
  rep.add("S invertible", square && s_inv.has_value());
  if (!square || !s_inv) return rep;

  // P: w -> (coordinates of rho(N e_i) w in the basis of W_i), stacked.
  QMatrix p_mat(0, s_mat.rows());
  {
    std::vector<QMatrix> p_blocks;
    for (std::size_t i = 0; i < idempotents.size(); ++i) {
      auto coords = solve_many(w_basis[i], rho_ne[i]);
      if (!coords)
        throw infeasible_error("split_representation: rho(N e_i) image escapes W_i");
      p_blocks.push_back(*coords);
    }
    p_mat = p_blocks.front();
    for (std::size_t i = 1; i < p_blocks.size(); ++i) p_mat = vstack(p_mat, p_blocks[i]);
  }

  QMatrix n_id = QMatrix::identity(s_mat.rows()).scaled(Rat(N));
  rep.add("S * P = N * Id", s_mat * p_mat == n_id);
  rep.add("P * S = N * Id", p_mat * s_mat == n_id);

  // Block-diagonality of S^{-1} rho(u) S with blocks tau_i(u e_i).
  std::vector<std::size_t> offsets{0};
  for (const QMatrix& b : w_basis) offsets.push_back(offsets.back() + b.cols());
  for (std::size_t u = 0; u < a.dim; ++u) {
    QMatrix conj = *s_inv * model.rho[u] * s_mat;
    bool okline = true;
    std::string detail;
    for (std::size_t bi = 0; bi < w_basis.size() && okline; ++bi) {
      AlgebraElement ue = a.mul(vec_unit(a.dim, u), idempotents[bi]);
      auto tau = solve_many(w_basis[bi], model.rho_of(ue) * w_basis[bi]);
      if (!tau) {
        okline = false;
        detail = "tau_i(u e_i) not expressible in W_i";
        break;
      }
      for (std::size_t r = 0; r < s_mat.rows() && okline; ++r)
        for (std::size_t c = offsets[bi]; c < offsets[bi + 1]; ++c) {
          bool inside = r >= offsets[bi] && r < offsets[bi + 1];
          Rat want = inside ? tau->at(r - offsets[bi], c - offsets[bi]) : Rat(0);
          if (conj.at(r, c) != want) {
            okline = false;
            std::ostringstream os;
            os << "entry (" << r << "," << c << ") of S^-1 rho(b" << u << ") S";
            detail = os.str();
            break;
          }
        }
    }
    std::ostringstream name;
    name << "S^-1 rho(b" << u << ") S block-diagonal with blocks tau_i";
    rep.add(name.str(), okline, detail);
  }
  return rep;
}

bool conj_isogeny_check(const TateRepModel& model, const AlgebraElement& u1,
                        const AlgebraElement& u2, const AlgebraElement& s, long N) {
  const StructureAlgebra& a = model.algebra;
  if (N <= 0) throw std::invalid_argument("conj_isogeny_check: N must be positive");
  auto inv_l = inverse(a.left_regular(s));
  if (!inv_l) throw std::invalid_argument("conj_isogeny_check: s not invertible");
  AlgebraElement s_inv = inv_l->apply(a.unit);
  if (a.mul(a.mul(s, u1), s_inv) != u2)
    throw std::invalid_argument("conj_isogeny_check: u2 != s u1 s^-1");
  QMatrix m1 = model.rho_of(u1).scaled(Rat(N));
  QMatrix m2 = model.rho_of(u2).scaled(Rat(N));
  QMatrix ms = model.rho_of(s).scaled(Rat(N));
  if (!m1.is_integral() || !m2.is_integral() || !ms.is_integral())
    throw std::invalid_argument("conj_isogeny_check: N does not clear denominators");

  QMatrix w1 = column_space_basis(m1);
  QMatrix w2 = column_space_basis(m2);
  QMatrix image = ms * w1;
  // rho(Ns)(W1) = W2 with injective restriction: ranks agree and the image
  // lands inside W2.
  if (rank(image) != w1.cols()) return false;
  if (w1.cols() != w2.cols()) return false;
  return solve_many(w2, image).has_value();
}

VerifierReport matrixE_model(const TateRepModel& model, const StructureAlgebra& k_field,
                             unsigned m) {
  VerifierReport rep;
  const StructureAlgebra& a = model.algebra;
  const std::size_t d = k_field.dim;
  if (a.dim != static_cast<std::size_t>(m) * m * d)
    throw std::invalid_argument("matrixE_model: presentation shape mismatch");

  // Basis convention of matrix_algebra_over_field: index (i,j,alpha) at
  // (i*m + j)*d + alpha represents kappa_alpha e_ij.
  auto unit_in_field = [&](std::size_t i, std::size_t j) {
    AlgebraElement v = vec_zero(a.dim);
    for (std::size_t al = 0; al < d; ++al) v[(i * m + j) * d + al] = k_field.unit[al];
    return v;
  };

  long n_clear = default_denominator_clearer(model);
  Rat n_rat(n_clear);

  QMatrix z1 = column_space_basis(model.rho_of(unit_in_field(0, 0)).scaled(n_rat));
  rep.add("Z_1 nonzero", z1.cols() > 0);
  if (z1.cols() == 0) return rep;

  // s_1i = Id - (e_11 + e_ii) + (e_1i + e_i1), s_11 = Id.
  std::vector<QMatrix> psi_blocks;
  for (unsigned i = 0; i < m; ++i) {
    AlgebraElement s1i;
    if (i == 0) {
      s1i = a.unit;
    } else {
      s1i = vec_sub(a.unit, vec_add(unit_in_field(0, 0), unit_in_field(i, i)));
      s1i = vec_add(s1i, vec_add(unit_in_field(0, i), unit_in_field(i, 0)));
    }
    psi_blocks.push_back(model.rho_of(s1i).scaled(n_rat) * z1);
  }
  QMatrix psi = psi_blocks.front();
  for (unsigned i = 1; i < m; ++i) psi = hstack(psi, psi_blocks[i]);
  bool square = psi.rows() == psi.cols();
  rep.add("psi square (m * dim Z_1 = 2g)", square);
  std::optional<QMatrix> psi_inv;
  if (square) psi_inv = inverse(psi);
  rep.add("psi invertible", square && psi_inv.has_value());
  if (!square || !psi_inv) return rep;

  // tau_1(kappa_alpha): action of the central field element on Z_1.
  std::vector<QMatrix> tau1(d);
  for (std::size_t al = 0; al < d; ++al) {
    AlgebraElement kappa_diag = vec_zero(a.dim);
    for (unsigned i = 0; i < m; ++i) kappa_diag[(i * m + i) * d + al] = 1;
    auto t = solve_many(z1, model.rho_of(kappa_diag) * z1);
    if (!t) throw infeasible_error("matrixE_model: field action escapes Z_1");
    tau1[al] = *t;
  }

  // Eq. (isog) on every basis element kappa_alpha e_ij.
  const std::size_t zdim = z1.cols();
  for (unsigned i = 0; i < m; ++i)
    for (unsigned j = 0; j < m; ++j)
      for (std::size_t al = 0; al < d; ++al) {
        AlgebraElement basis_el = vec_zero(a.dim);
        basis_el[(i * m + j) * d + al] = 1;
        // Mat_m(kappa)(basis_el) acts on Z_1^m as E_ij tensor tau1[al].
        QMatrix big(psi.rows(), psi.cols());
        for (std::size_t r = 0; r < zdim; ++r)
          for (std::size_t c = 0; c < zdim; ++c)
            big.at(i * zdim + r, j * zdim + c) = tau1[al].at(r, c);
        bool okline = model.rho_of(basis_el) == psi * big * *psi_inv;
        std::ostringstream name;
        name << "isog identity for kappa_" << al << " e_" << (i + 1) << (j + 1);
        rep.add(name.str(), okline);
      }
  return rep;
}

}  // namespace endosplit
