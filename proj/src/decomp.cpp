#include "endosplit/decomp.hpp"

#include <cmath>
#include <stdexcept>

namespace endosplit {

namespace {

// Checks k is exactly the center and returns m with dim_k(a) = m^2.
std::size_t central_simple_degree(const StructureAlgebra& a, const BaseFieldTag& k) {
  if (!k.is_field_certified)
    throw std::invalid_argument("reduced_trace: base field not certified");
  Subalgebra z = center(a);
  if (!z.same_space(k.subalgebra))
    throw std::invalid_argument("reduced_trace: center differs from the given field");
  std::size_t dk = k.subalgebra.dim();
  if (dk == 0 || a.dim % dk != 0)
    throw std::invalid_argument("reduced_trace: dim not divisible by field degree");
  std::size_t rel = a.dim / dk;
  auto m = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(rel))));
  while (m * m < rel) ++m;
  while (m > 0 && m * m > rel) --m;
  if (m * m != rel)
    throw std::invalid_argument("reduced_trace: dimension over the center is not a square");
  return m;
}

Rat regular_trace(const StructureAlgebra& a, const AlgebraElement& x) {
  Rat t(0);
  for (std::size_t j = 0; j < a.dim; ++j) t += a.mul(x, vec_unit(a.dim, j))[j];
  return t;
}

}  // namespace

AlgebraElement reduced_trace(const StructureAlgebra& a, const BaseFieldTag& k,
                             const AlgebraElement& x) {
  const Subalgebra& kf = k.subalgebra;
  std::size_t m = central_simple_degree(a, k);
  std::size_t dk = kf.dim();
  // T(x) in k is characterized by Tr_{k/Q}(kappa T(x)) = Tr_{A/Q}(kappa x)
  // for every kappa; the trace pairing on k is nondegenerate in char 0.
  QMatrix gram(dk, dk);
  for (std::size_t i = 0; i < dk; ++i)
    for (std::size_t j = 0; j < dk; ++j) {
      AlgebraElement prod = kf.induced.mul(vec_unit(dk, i), vec_unit(dk, j));
      gram.at(i, j) = regular_trace(kf.induced, prod);
    }
  // Trace transitivity: Tr_{A/Q}(kappa_i x) = Tr_{k/Q}(kappa_i T) with
  // T = Tr_{A/k}(L_x) in k.
  QVector rhs(dk);
  for (std::size_t i = 0; i < dk; ++i)
    rhs[i] = regular_trace(a, a.mul(kf.basis.col(i), x));
  auto t = solve(gram, rhs);
  if (!t) throw infeasible_error("reduced_trace: trace pairing degenerate");
  QVector out(dk);
  for (std::size_t i = 0; i < dk; ++i) out[i] = (*t)[i] / Rat(static_cast<long>(m));
  return out;
}

AlgebraElement project_to_sl(const StructureAlgebra& a, const BaseFieldTag& k,
                             const AlgebraElement& f) {
  std::size_t m = central_simple_degree(a, k);
  AlgebraElement tr = reduced_trace(a, k, f);
  AlgebraElement central = k.subalgebra.to_parent(tr);
  return vec_sub(f, vec_scale(Rat(1) / Rat(static_cast<long>(m)), central));
}

JordanPair jordan_chevalley(const StructureAlgebra& a, const AlgebraElement& f) {
  JordanPair out;
  if (vec_is_zero(f)) {
    out.semisimple_part = vec_zero(a.dim);
    out.nilpotent_part = vec_zero(a.dim);
    out.witness_poly = QPoly::zero();
    return out;
  }
  QPoly mu = minpoly_element(a, f);
  QPoly g = squarefree_part(mu);
  if (g == mu) {
    out.semisimple_part = f;
    out.nilpotent_part = vec_zero(a.dim);
    out.witness_poly = QPoly::x();
    return out;
  }
  // Newton iteration z <- z - g(z) / g'(z) in Q[t]/(mu), starting at z = t.
  QPoly z = QPoly::x();
  QPoly gd = g.derivative();
  int steps = 1;
  while ((1 << steps) < mu.degree() + 1) ++steps;
  ++steps;
  auto compose_mod = [&mu](const QPoly& p, const QPoly& q) {
    // p(q) mod mu by Horner.
    QPoly r;
    for (std::size_t i = p.coeffs().size(); i-- > 0;) {
      r = (r * q + QPoly::constant(p.coeff(i))) % mu;
    }
    return r;
  };
  for (int it = 0; it < steps; ++it) {
    QPoly gz = compose_mod(g, z);
    if (gz.is_zero()) break;
    QPoly gdz = compose_mod(gd, z);
    auto inv = modinv_in_quotient(gdz, mu);
    if (!inv) throw infeasible_error("jordan_chevalley: g'(z) not invertible mod mu");
    z = (z - gz * *inv) % mu;
  }
  out.witness_poly = z;
  out.semisimple_part = a.eval_poly(z, f);
  out.nilpotent_part = vec_sub(f, out.semisimple_part);
  return out;
}

Sl2Triple jacobson_morozov(const StructureAlgebra& a, const BaseFieldTag& k,
                           const AlgebraElement& e) {
  if (vec_is_zero(e)) throw std::invalid_argument("jacobson_morozov: e is zero");
  QPoly mu = minpoly_element(a, e);
  for (std::size_t i = 0; i + 1 < mu.coeffs().size(); ++i)
    if (mu.coeff(i) != 0)
      throw std::invalid_argument("jacobson_morozov: e is not nilpotent");

  const std::size_t n = a.dim;
  QMatrix ad_e = a.left_regular(e) - a.right_regular(e);
  QMatrix ad_e2 = ad_e * ad_e;

  // Stage 1: h = [e, w] with (ad e)^2 w = -2e, plus centrality constraints
  // [h, kappa] = 0 over the base field.
  QMatrix sys1 = ad_e2;
  QVector rhs1 = vec_scale(Rat(-2), e);
  for (std::size_t i = 0; i < k.subalgebra.dim(); ++i) {
    AlgebraElement kappa = k.subalgebra.basis.col(i);
    QMatrix ad_kappa = a.left_regular(kappa) - a.right_regular(kappa);
    sys1 = vstack(sys1, ad_kappa * ad_e);
    for (std::size_t t = 0; t < n; ++t) rhs1.push_back(Rat(0));
  }
  auto w = solve(sys1, rhs1);
  if (!w) throw infeasible_error("jacobson_morozov: no h with [h,e] = 2e in im(ad e)");
  AlgebraElement h = ad_e.apply(*w);

  // Stage 2: y with [e,y] = h and [h,y] = -2y (and [y, kappa] = 0).
  QMatrix ad_h = a.left_regular(h) - a.right_regular(h);
  QMatrix top = ad_e;
  QMatrix bottom = ad_h + QMatrix::identity(n).scaled(Rat(2));
  QMatrix sys2 = vstack(top, bottom);
  QVector rhs2 = h;
  for (std::size_t t = 0; t < n; ++t) rhs2.push_back(Rat(0));
  for (std::size_t i = 0; i < k.subalgebra.dim(); ++i) {
    AlgebraElement kappa = k.subalgebra.basis.col(i);
    QMatrix ad_kappa = a.left_regular(kappa) - a.right_regular(kappa);
    sys2 = vstack(sys2, ad_kappa);
    for (std::size_t t = 0; t < n; ++t) rhs2.push_back(Rat(0));
  }
  auto y = solve(sys2, rhs2);
  if (!y) throw infeasible_error("jacobson_morozov: no y completing the triple");
  return Sl2Triple{e, h, *y};
}

namespace {

bool brackets_hold(const QMatrix& me, const QMatrix& mh, const QMatrix& my) {
  QMatrix two_e = me.scaled(Rat(2));
  QMatrix minus_two_y = my.scaled(Rat(-2));
  return (mh * me - me * mh) == two_e && (mh * my - my * mh) == minus_two_y &&
         (me * my - my * me) == mh;
}

}  // namespace

Sl2ModuleDecomposition sl2_decompose(const QMatrix& action_e, const QMatrix& action_h,
                                     const QMatrix& action_y) {
  if (!action_e.is_square() || action_e.rows() != action_h.rows() ||
      action_e.rows() != action_y.rows())
    throw std::invalid_argument("sl2_decompose: shape mismatch");
  if (!brackets_hold(action_e, action_h, action_y))
    throw std::invalid_argument("sl2_decompose: bracket relations violated");

  const std::size_t dim = action_e.rows();
  Sl2ModuleDecomposition out;
  out.module_dim = dim;
  if (dim == 0) return out;

  for (long n = static_cast<long>(dim) - 1; n >= 0; --n) {
    // Highest-weight vectors of weight n: ker(e) intersect ker(h - n).
    QMatrix shifted = action_h;
    for (std::size_t i = 0; i < dim; ++i) shifted.at(i, i) -= n;
    QMatrix hw = kernel_basis(vstack(action_e, shifted));
    if (hw.cols() == 0) continue;
    IsotypicBlock block;
    block.highest_weight = static_cast<unsigned>(n);
    block.multiplicity = static_cast<unsigned>(hw.cols());
    std::vector<QVector> cols;
    for (std::size_t s = 0; s < hw.cols(); ++s) {
      QVector v = hw.col(s);
      cols.push_back(v);
      for (long j = 0; j < n; ++j) {
        v = action_y.apply(v);
        cols.push_back(v);
      }
    }
    block.adapted_basis = QMatrix::from_columns(cols);
    out.blocks.push_back(std::move(block));
  }
  std::size_t total = 0;
  for (const IsotypicBlock& b : out.blocks)
    total += static_cast<std::size_t>(b.highest_weight + 1) * b.multiplicity;
  if (total != dim)
    throw infeasible_error("sl2_decompose: strand dimensions do not fill the module");
  return out;
}

std::vector<MatrixUnitBlock> matrix_units_from_sl2(const StructureAlgebra& a,
                                                   const Subalgebra& c,
                                                   const Sl2ModuleDecomposition& d) {
  const std::size_t dim = d.module_dim;
  if (dim != a.dim)
    throw std::invalid_argument("matrix_units_from_sl2: decomposition dim mismatch");

  // Full adapted basis, block by block.
  std::vector<QVector> cols;
  for (const IsotypicBlock& b : d.blocks)
    for (std::size_t j = 0; j < b.adapted_basis.cols(); ++j)
      cols.push_back(b.adapted_basis.col(j));
  QMatrix adapted = QMatrix::from_columns(cols);
  auto adapted_inv = inverse(adapted);
  if (!adapted_inv)
    throw std::invalid_argument("matrix_units_from_sl2: adapted basis not invertible");

  // rho(x) for x in c's basis, stacked as columns of vec(rho).
  std::vector<QMatrix> rho;
  for (std::size_t i = 0; i < c.dim(); ++i) rho.push_back(a.left_regular(c.basis.col(i)));
  QMatrix sys(dim * dim, c.dim());
  for (std::size_t i = 0; i < c.dim(); ++i)
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t cc = 0; cc < dim; ++cc) sys.at(r * dim + cc, i) = rho[i].at(r, cc);

  // All strand-shift targets share the elimination: one solve_many call.
  // Target for (block, j, l): position l of every strand of the block maps
  // to position j of the same strand, zero elsewhere.
  std::size_t total_units = 0;
  for (const IsotypicBlock& b : d.blocks) {
    std::size_t w = b.highest_weight + 1;
    total_units += w * w;
  }
  QMatrix targets(dim * dim, total_units);
  std::size_t offset = 0, unit_col = 0;
  for (const IsotypicBlock& b : d.blocks) {
    const std::size_t w = b.highest_weight + 1;
    for (std::size_t j = 0; j < w; ++j)
      for (std::size_t l = 0; l < w; ++l) {
        QMatrix dmat(dim, dim);
        for (std::size_t s = 0; s < b.multiplicity; ++s) {
          std::size_t base = offset + s * w;
          dmat.at(base + j, base + l) = 1;
        }
        QMatrix target = adapted * dmat * *adapted_inv;
        for (std::size_t r = 0; r < dim; ++r)
          for (std::size_t cc = 0; cc < dim; ++cc)
            targets.at(r * dim + cc, unit_col) = target.at(r, cc);
        ++unit_col;
      }
    offset += w * b.multiplicity;
  }
  auto coords = solve_many(sys, targets);
  if (!coords)
    throw infeasible_error("matrix_units_from_sl2: unit not realizable inside c");

  std::vector<MatrixUnitBlock> out;
  unit_col = 0;
  for (const IsotypicBlock& b : d.blocks) {
    const std::size_t w = b.highest_weight + 1;
    MatrixUnitBlock ub;
    ub.highest_weight = b.highest_weight;
    ub.units.resize(w * w);
    for (std::size_t j = 0; j < w; ++j)
      for (std::size_t l = 0; l < w; ++l) ub.units[j * w + l] = c.to_parent(coords->col(unit_col++));
    out.push_back(std::move(ub));
  }
  return out;
}

Subalgebra commutant(const std::vector<QMatrix>& action) {
  if (action.empty()) throw std::invalid_argument("commutant: empty action");
  const std::size_t n = action.front().rows();
  for (const QMatrix& m : action)
    if (!m.is_square() || m.rows() != n)
      throw std::invalid_argument("commutant: shape mismatch");
  // Unknown X (n x n, vectorized row-major); equations M X - X M = 0.
  QMatrix sys(action.size() * n * n, n * n);
  for (std::size_t t = 0; t < action.size(); ++t) {
    const QMatrix& m = action[t];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::size_t row = t * n * n + i * n + j;
        // (M X)_ij = sum_k M_ik X_kj ; (X M)_ij = sum_k X_ik M_kj
        for (std::size_t kk = 0; kk < n; ++kk) {
          sys.at(row, kk * n + j) += m.at(i, kk);
          sys.at(row, i * n + kk) -= m.at(kk, j);
        }
      }
  }
  QMatrix ker = kernel_basis(sys);
  StructureAlgebra full = matrix_algebra(n);
  std::vector<AlgebraElement> span;
  for (std::size_t j = 0; j < ker.cols(); ++j) span.push_back(ker.col(j));
  return make_subalgebra(full, span);
}

StructureAlgebra matrix_algebra(std::size_t n) {
  StructureAlgebra a;
  a.dim = n * n;
  a.constants.assign(a.dim * a.dim, vec_zero(a.dim));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t kk = 0; kk < n; ++kk)
        for (std::size_t l = 0; l < n; ++l) {
          std::size_t left = i * n + j, right = kk * n + l;
          if (j == kk) a.constants[left * a.dim + right][i * n + l] = 1;
        }
  a.unit = vec_zero(a.dim);
  for (std::size_t i = 0; i < n; ++i) a.unit[i * n + i] = 1;
  return a;
}

}  // namespace endosplit
