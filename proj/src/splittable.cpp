#include "endosplit/splittable.hpp"

#include <algorithm>
#include <future>
#include <sstream>
#include <stdexcept>

#include "endosplit/factor.hpp"

namespace endosplit {

namespace {

// A certificate for a subalgebra of `sub.parent` computed inside `sub`'s
// induced algebra is lifted by mapping every stored element through the
// basis; witness coordinates are unchanged.
SplittableCertificate lift_certificate(const SplittableCertificate& cert, const Subalgebra& sub) {
  SplittableCertificate out;
  out.ambient = sub.parent;
  std::vector<QVector> cols;
  for (std::size_t j = 0; j < cert.sub_basis.cols(); ++j)
    cols.push_back(sub.to_parent(cert.sub_basis.col(j)));
  out.sub_basis = cols.empty() ? QMatrix(sub.parent.dim, 0) : QMatrix::from_columns(cols);
  for (const CertFactor& f : cert.factors) {
    CertFactor g;
    g.size = f.size;
    std::vector<QVector> fb;
    for (std::size_t j = 0; j < f.field_basis.cols(); ++j)
      fb.push_back(sub.to_parent(f.field_basis.col(j)));
    g.field_basis = QMatrix::from_columns(fb);
    for (const AlgebraElement& u : f.units) g.units.push_back(sub.to_parent(u));
    out.factors.push_back(std::move(g));
  }
  out.witness_unit = cert.witness_unit;
  out.witness_f = cert.witness_f;
  return out;
}

// C = K (a certified field subalgebra containing the reference unit and f):
// single factor Mat_1(K).
SplittableCertificate scalar_certificate(const StructureAlgebra& a, const Subalgebra& field,
                                         const AlgebraElement& f) {
  SplittableCertificate cert;
  cert.ambient = a;
  cert.sub_basis = field.basis;
  CertFactor factor;
  factor.size = 1;
  factor.field_basis = field.basis;
  if (!field.unit_in_parent)
    throw infeasible_error("scalar_certificate: field has no unit");
  factor.units = {*field.unit_in_parent};
  cert.factors.push_back(std::move(factor));
  auto wu = field.to_sub(a.unit);
  auto wf = field.to_sub(f);
  if (!wu || !wf) throw infeasible_error("scalar_certificate: witness outside the field");
  cert.witness_unit = *wu;
  cert.witness_f = *wf;
  return cert;
}

void sort_factors(SplittableCertificate& cert) {
  std::stable_sort(cert.factors.begin(), cert.factors.end(),
                   [](const CertFactor& a, const CertFactor& b) {
                     if (a.size != b.size) return a.size < b.size;
                     if (a.field_dim() != b.field_dim()) return a.field_dim() < b.field_dim();
                     for (std::size_t j = 0; j < a.field_basis.cols(); ++j)
                       for (std::size_t i = 0; i < a.field_basis.rows(); ++i) {
                         if (a.field_basis.at(i, j) != b.field_basis.at(i, j))
                           return a.field_basis.at(i, j) < b.field_basis.at(i, j);
                       }
                     return false;
                   });
}

// Base field subalgebra of the induced algebra of `factor` spanned by
// {kappa * e} for kappa in k's basis; certified on construction.
BaseFieldTag restrict_base_field(const StructureAlgebra& parent_alg, const Subalgebra& factor,
                                 const BaseFieldTag& k) {
  std::vector<AlgebraElement> span;
  const AlgebraElement& e = *factor.unit_in_parent;
  for (std::size_t i = 0; i < k.subalgebra.dim(); ++i) {
    AlgebraElement v = parent_alg.mul(k.subalgebra.basis.col(i), e);
    auto sub = factor.to_sub(v);
    if (!sub) throw infeasible_error("restrict_base_field: k e escapes the factor");
    span.push_back(*sub);
  }
  BaseFieldTag tag = field_certify(make_subalgebra(factor.induced, span));
  if (!tag.is_field_certified)
    throw infeasible_error("restrict_base_field: k e is not a field");
  return tag;
}

SplittableCertificate solve_rec(const StructureAlgebra& a, const AlgebraElement& f,
                                BaseFieldTag k, const SplitOptions& options, SplitStats* stats,
                                std::size_t depth, std::size_t dim_over_base_bound);

// Step 1: split along the central idempotents and recurse per simple factor.
SplittableCertificate split_over_factors(const StructureAlgebra& a, const AlgebraElement& f,
                                         const BaseFieldTag& k,
                                         const std::vector<AlgebraElement>& idems,
                                         const SplitOptions& options, SplitStats* stats,
                                         std::size_t depth) {
  std::vector<Subalgebra> factors;
  for (const AlgebraElement& e : idems) {
    QMatrix image = a.left_regular(e);
    std::vector<QVector> span;
    for (std::size_t j = 0; j < a.dim; ++j) span.push_back(image.col(j));
    factors.push_back(make_subalgebra(a, span));
  }

  auto solve_factor = [&](std::size_t i) {
    const Subalgebra& fac = factors[i];
    AlgebraElement fi = a.mul(idems[i], f);
    auto fi_sub = fac.to_sub(fi);
    if (!fi_sub) throw infeasible_error("split: e_i f escapes its ideal");
    BaseFieldTag ki = restrict_base_field(a, fac, k);
    std::size_t bound = fac.dim() / ki.subalgebra.dim();
    SplittableCertificate sub_cert =
        solve_rec(fac.induced, *fi_sub, ki, options, stats, depth + 1, bound);
    return lift_certificate(sub_cert, fac);
  };

  std::vector<SplittableCertificate> lifted(factors.size());
  if (options.parallel && factors.size() > 1) {
    std::vector<std::future<SplittableCertificate>> futs;
    for (std::size_t i = 0; i < factors.size(); ++i)
      futs.push_back(std::async(std::launch::async, solve_factor, i));
    for (std::size_t i = 0; i < factors.size(); ++i) lifted[i] = futs[i].get();
  } else {
    for (std::size_t i = 0; i < factors.size(); ++i) lifted[i] = solve_factor(i);
  }

  SplittableCertificate combined = lifted.front();
  for (std::size_t i = 1; i < lifted.size(); ++i)
    combined = cert_direct_sum(combined, lifted[i]);
  return combined;
}

// Step 6: nonzero nilpotent f in a central simple algebra over k.
SplittableCertificate nilpotent_certificate(const StructureAlgebra& a, const AlgebraElement& f,
                                            const AlgebraElement& nil, const BaseFieldTag& k,
                                            SplitStats* stats) {
  Sl2Triple triple = jacobson_morozov(a, k, nil);
  std::vector<AlgebraElement> gens{triple.e, triple.h, triple.y};
  for (std::size_t i = 0; i < k.subalgebra.dim(); ++i)
    gens.push_back(k.subalgebra.basis.col(i));
  Subalgebra c = subalgebra_generated(a, gens, true);

  Sl2ModuleDecomposition dec = sl2_decompose(
      a.left_regular(triple.e), a.left_regular(triple.h), a.left_regular(triple.y));
  if (stats) {
    SplitStats::Step6Record rec;
    rec.module_dim = dec.module_dim;
    for (const IsotypicBlock& b : dec.blocks)
      rec.blocks.emplace_back(b.highest_weight, b.multiplicity);
    QMatrix mh = a.left_regular(triple.h);
    for (long w = -static_cast<long>(dec.module_dim) + 1;
         w < static_cast<long>(dec.module_dim); ++w)
      rec.weight_dims.emplace_back(w, integer_eigenspace(mh, w).cols());
    stats->step6.push_back(std::move(rec));
  }
  std::vector<MatrixUnitBlock> unit_blocks = matrix_units_from_sl2(a, c, dec);

  SplittableCertificate cert;
  cert.ambient = a;
  cert.sub_basis = c.basis;
  const std::size_t dk = k.subalgebra.dim();
  std::size_t expected_dim = 0;
  for (const MatrixUnitBlock& ub : unit_blocks) {
    unsigned m = ub.highest_weight + 1;
    expected_dim += static_cast<std::size_t>(m) * m * dk;
    CertFactor factor;
    factor.size = m;
    factor.units = ub.units;
    // Field copy inside the factor: kappa * (sum of diagonal units).
    AlgebraElement block_unit = vec_zero(a.dim);
    for (unsigned j = 0; j < m; ++j)
      block_unit = vec_add(block_unit, ub.units[j * m + j]);
    std::vector<QVector> fb;
    for (std::size_t i = 0; i < dk; ++i)
      fb.push_back(a.mul(k.subalgebra.basis.col(i), block_unit));
    factor.field_basis = QMatrix::from_columns(fb);
    cert.factors.push_back(std::move(factor));
  }
  if (expected_dim != c.dim())
    throw infeasible_error("nilpotent branch: generated subalgebra has unexpected dimension");
  auto wu = c.to_sub(a.unit);
  auto wf = c.to_sub(f);
  if (!wu || !wf) throw infeasible_error("nilpotent branch: witness outside C");
  cert.witness_unit = *wu;
  cert.witness_f = *wf;
  return cert;
}

SplittableCertificate solve_rec(const StructureAlgebra& a, const AlgebraElement& f,
                                BaseFieldTag k, const SplitOptions& options, SplitStats* stats,
                                std::size_t depth, std::size_t dim_over_base_bound) {
  if (stats) stats->recursion_depth = std::max(stats->recursion_depth, depth);
  if (a.dim == 0) throw std::invalid_argument("splittable: zero algebra");
  // Termination measure: dim over the current base field strictly decreases
  // along Steps 1, 2 and 5.
  if (k.subalgebra.dim() == 0 || a.dim % k.subalgebra.dim() != 0)
    throw infeasible_error("splittable: base field degree does not divide dim");
  std::size_t dim_over_base = a.dim / k.subalgebra.dim();
  if (dim_over_base > dim_over_base_bound)
    throw infeasible_error("splittable: termination measure failed to decrease");

  // Step 0 / rebased scalar case: A = k itself.
  if (a.dim == k.subalgebra.dim())
    return scalar_certificate(a, k.subalgebra, f);

  // Step 1: split a non-simple algebra along its central idempotents.
  std::vector<AlgebraElement> idems = central_idempotents(a);
  if (idems.size() > 1) return split_over_factors(a, f, k, idems, options, stats, depth);

  // Step 2: re-base to the full center when it is larger than k.
  Subalgebra e_center = center(a);
  if (e_center.dim() > k.subalgebra.dim()) {
    BaseFieldTag bigger = field_certify(e_center);
    if (!bigger.is_field_certified)
      throw infeasible_error("splittable: center of a simple algebra failed field check");
    return solve_rec(a, f, bigger, options, stats, depth + 1, dim_over_base - 1);
  }
  if (!e_center.same_space(k.subalgebra))
    throw infeasible_error("splittable: base field is not the center");

  // Step 3: replace f by its trace-zero projection.
  AlgebraElement g = project_to_sl(a, k, f);

  // Step 4: Jordan-Chevalley of the projection.
  JordanPair jp = jordan_chevalley(a, g);

  // Step 5: nonzero semisimple part: recurse into its centralizer.
  if (!vec_is_zero(jp.semisimple_part)) {
    std::vector<AlgebraElement> cgens{jp.semisimple_part};
    for (std::size_t i = 0; i < k.subalgebra.dim(); ++i)
      cgens.push_back(k.subalgebra.basis.col(i));
    Subalgebra z = centralizer(a, cgens);
    if (z.dim() >= a.dim)
      throw infeasible_error("splittable: centralizer did not shrink");
    auto f_in_z = z.to_sub(f);
    if (!f_in_z) throw infeasible_error("splittable: f escapes the centralizer");
    std::vector<AlgebraElement> kspan;
    for (std::size_t i = 0; i < k.subalgebra.dim(); ++i) {
      auto v = z.to_sub(k.subalgebra.basis.col(i));
      if (!v) throw infeasible_error("splittable: k escapes the centralizer");
      kspan.push_back(*v);
    }
    BaseFieldTag kz = field_certify(make_subalgebra(z.induced, kspan));
    if (!kz.is_field_certified)
      throw infeasible_error("splittable: base field lost certification in centralizer");
    std::size_t bound = z.dim() / kz.subalgebra.dim();
    SplittableCertificate sub_cert =
        solve_rec(z.induced, *f_in_z, kz, options, stats, depth + 1, bound);
    return lift_certificate(sub_cert, z);
  }

  // f is central plus nilpotent; the central part lies in k.
  if (vec_is_zero(jp.nilpotent_part)) {
    // Scalar case: C = k * 1.
    return scalar_certificate(a, k.subalgebra, f);
  }

  // Step 6: nonzero nilpotent.
  return nilpotent_certificate(a, f, jp.nilpotent_part, k, stats);
}

}  // namespace

SplittableCertificate splittable_subalgebra(const StructureAlgebra& a, const AlgebraElement& f,
                                            const SplitOptions& options, SplitStats* stats) {
  if (a.dim == 0) throw std::invalid_argument("splittable_subalgebra: zero algebra");
  if (f.size() != a.dim) throw std::invalid_argument("splittable_subalgebra: f has wrong length");
  if (!is_semisimple(a))
    throw std::invalid_argument("splittable_subalgebra: non-semisimple input");
  BaseFieldTag q = field_certify(make_subalgebra(a, {a.unit}));
  SplittableCertificate cert = solve_rec(a, f, q, options, stats, 0, a.dim);
  sort_factors(cert);
  return cert;
}

VerifyReport verify_certificate(const SplittableCertificate& cert, const AlgebraElement& f) {
  VerifyReport rep;
  auto fail = [&rep](const std::string& what) {
    rep.ok = false;
    if (rep.first_failure.empty()) rep.first_failure = what;
    return rep;
  };

  const StructureAlgebra& a = cert.ambient;
  const std::size_t n = a.dim;
  const std::size_t dc = cert.sub_basis.cols();
  if (cert.sub_basis.rows() != n) return fail("sub_basis: wrong ambient dimension");
  if (dc == 0) return fail("sub_basis: empty");
  if (rank(cert.sub_basis) != dc) return fail("sub_basis: columns not independent");

  // Witnesses reproduce 1 and f exactly.
  if (cert.witness_unit.size() != dc || cert.witness_f.size() != dc)
    return fail("witness: wrong length");
  if (cert.sub_basis.apply(cert.witness_unit) != a.unit)
    return fail("witness_unit does not reproduce 1");
  if (f.size() != n || cert.sub_basis.apply(cert.witness_f) != f)
    return fail("witness_f does not reproduce f");

  // C closed under multiplication.
  {
    QMatrix products(n, dc * dc);
    for (std::size_t i = 0; i < dc; ++i)
      for (std::size_t j = 0; j < dc; ++j)
        products.set_col(i * dc + j, a.mul(cert.sub_basis.col(i), cert.sub_basis.col(j)));
    if (!solve_many(cert.sub_basis, products))
      return fail("C is not closed under multiplication");
  }

  // Per-factor checks.
  std::size_t dim_sum = 0;
  std::vector<QVector> all_factor_vecs;
  std::vector<std::vector<AlgebraElement>> factor_spans;
  for (std::size_t fi = 0; fi < cert.factors.size(); ++fi) {
    const CertFactor& fac = cert.factors[fi];
    const unsigned m = fac.size;
    std::ostringstream tag;
    tag << "factor " << fi << ": ";
    if (fac.units.size() != static_cast<std::size_t>(m) * m)
      return fail(tag.str() + "unit table has wrong size");
    if (fac.field_basis.rows() != n || fac.field_basis.cols() == 0)
      return fail(tag.str() + "field basis has wrong shape");

    // Everything lies inside C.
    for (std::size_t j = 0; j < fac.field_basis.cols(); ++j)
      if (!in_column_space(cert.sub_basis, fac.field_basis.col(j)))
        return fail(tag.str() + "field basis element outside C");
    for (const AlgebraElement& u : fac.units)
      if (u.size() != n || !in_column_space(cert.sub_basis, u))
        return fail(tag.str() + "matrix unit outside C");

    // Unit relations E_jl E_pq = delta_lp E_jq, full enumeration.
    for (unsigned j = 0; j < m; ++j)
      for (unsigned l = 0; l < m; ++l)
        for (unsigned p = 0; p < m; ++p)
          for (unsigned q = 0; q < m; ++q) {
            AlgebraElement prod = a.mul(fac.units[j * m + l], fac.units[p * m + q]);
            AlgebraElement want =
                (l == p) ? fac.units[j * m + q] : vec_zero(n);
            if (prod != want) {
              std::ostringstream os;
              os << tag.str() << "unit relation fails at (j,l,p,q) = (" << j << "," << l << ","
                 << p << "," << q << ")";
              return fail(os.str());
            }
          }

    // Block idempotent: sum of diagonal units, idempotent and central in C.
    AlgebraElement block_unit = vec_zero(n);
    for (unsigned j = 0; j < m; ++j)
      block_unit = vec_add(block_unit, fac.units[j * m + j]);
    if (a.mul(block_unit, block_unit) != block_unit)
      return fail(tag.str() + "block idempotent not idempotent");
    for (std::size_t j = 0; j < dc; ++j) {
      const AlgebraElement cb = cert.sub_basis.col(j);
      if (a.mul(block_unit, cb) != a.mul(cb, block_unit))
        return fail(tag.str() + "block idempotent not central in C");
    }

    // Field elements commute with all units; field is a certified field.
    for (std::size_t i = 0; i < fac.field_basis.cols(); ++i) {
      AlgebraElement kb = fac.field_basis.col(i);
      for (const AlgebraElement& u : fac.units)
        if (a.mul(kb, u) != a.mul(u, kb))
          return fail(tag.str() + "field element does not commute with units");
    }
    {
      std::vector<AlgebraElement> span;
      for (std::size_t i = 0; i < fac.field_basis.cols(); ++i)
        span.push_back(fac.field_basis.col(i));
      Subalgebra kf;
      try {
        kf = make_subalgebra(a, span);
      } catch (const std::exception&) {
        return fail(tag.str() + "field basis does not span a closed subalgebra");
      }
      if (kf.dim() != fac.field_basis.cols())
        return fail(tag.str() + "field basis not independent");
      BaseFieldTag tagf;
      try {
        tagf = field_certify(kf);
      } catch (const std::exception&) {
        return fail(tag.str() + "field basis spans a non-commutative algebra");
      }
      if (!tagf.is_field_certified) return fail(tag.str() + "field certification failed");
      // The factor's field must have the block idempotent as its unit.
      if (!kf.unit_in_parent || *kf.unit_in_parent != block_unit)
        return fail(tag.str() + "field unit differs from the block idempotent");
    }

    // {kappa E_jl} is a basis of the factor span.
    std::vector<AlgebraElement> span_vecs;
    for (std::size_t i = 0; i < fac.field_basis.cols(); ++i)
      for (const AlgebraElement& u : fac.units)
        span_vecs.push_back(a.mul(fac.field_basis.col(i), u));
    QMatrix span_mat = QMatrix::from_columns(span_vecs);
    if (rank(span_mat) != span_vecs.size())
      return fail(tag.str() + "products kappa E_jl are not independent");
    dim_sum += span_vecs.size();
    factor_spans.push_back(span_vecs);
    for (const QVector& v : span_vecs) all_factor_vecs.push_back(v);
  }

  // Factors pairwise annihilate.
  for (std::size_t i = 0; i < factor_spans.size(); ++i)
    for (std::size_t j = 0; j < factor_spans.size(); ++j) {
      if (i == j) continue;
      for (const AlgebraElement& x : factor_spans[i])
        for (const AlgebraElement& y : factor_spans[j])
          if (!vec_is_zero(a.mul(x, y))) {
            std::ostringstream os;
            os << "factors " << i << " and " << j << " do not annihilate each other";
            return fail(os.str());
          }
    }

  // Direct sum of the factor spans is all of C.
  if (dim_sum != dc) return fail("factor dimensions do not sum to dim C");
  if (!all_factor_vecs.empty() && rank(QMatrix::from_columns(all_factor_vecs)) != dc)
    return fail("factor spans do not fill C");

  // Block idempotents sum to 1.
  AlgebraElement total = vec_zero(n);
  for (const CertFactor& fac : cert.factors) {
    const unsigned m = fac.size;
    for (unsigned j = 0; j < m; ++j) total = vec_add(total, fac.units[j * m + j]);
  }
  if (total != a.unit) return fail("block idempotents do not sum to 1");

  return rep;
}

SplittableCertificate cert_direct_sum(const SplittableCertificate& c1,
                                      const SplittableCertificate& c2) {
  if (c1.ambient.dim != c2.ambient.dim)
    throw std::invalid_argument("cert_direct_sum: different ambient algebras");
  const StructureAlgebra& a = c1.ambient;
  for (std::size_t i = 0; i < c1.sub_basis.cols(); ++i)
    for (std::size_t j = 0; j < c2.sub_basis.cols(); ++j) {
      if (!vec_is_zero(a.mul(c1.sub_basis.col(i), c2.sub_basis.col(j))) ||
          !vec_is_zero(a.mul(c2.sub_basis.col(j), c1.sub_basis.col(i))))
        throw std::invalid_argument("cert_direct_sum: ideals not orthogonal");
    }
  SplittableCertificate out;
  out.ambient = a;
  out.sub_basis = hstack(c1.sub_basis, c2.sub_basis);
  out.factors = c1.factors;
  for (const CertFactor& f : c2.factors) out.factors.push_back(f);
  out.witness_unit = c1.witness_unit;
  for (const Rat& x : c2.witness_unit) out.witness_unit.push_back(x);
  out.witness_f = c1.witness_f;
  for (const Rat& x : c2.witness_f) out.witness_f.push_back(x);
  return out;
}

}  // namespace endosplit
