#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "endosplit/decomp.hpp"
#include "endosplit/factor.hpp"
#include "endosplit/generators.hpp"

using namespace endosplit;

namespace {

AlgebraElement unit_matrix_el(std::size_t n, std::size_t i, std::size_t j) {
  return vec_unit(n * n, i * n + j);
}

AlgebraElement matrix_as_element(const QMatrix& m) {
  AlgebraElement x(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) x[i * m.cols() + j] = m.at(i, j);
  return x;
}

AlgebraElement bracket(const StructureAlgebra& a, const AlgebraElement& x,
                       const AlgebraElement& y) {
  return vec_sub(a.mul(x, y), a.mul(y, x));
}

BaseFieldTag rational_base(const StructureAlgebra& a) {
  return field_certify(subalgebra_generated(a, {a.unit}, true));
}

bool is_nilpotent_element(const StructureAlgebra& a, const AlgebraElement& x) {
  QPoly mu = minpoly_element(a, x);
  for (int i = 0; i < mu.degree(); ++i)
    if (mu.coeff(i) != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("reduced_trace") {
  StructureAlgebra m3 = matrix_algebra(3);
  BaseFieldTag q3 = rational_base(m3);
  CHECK(reduced_trace(m3, q3, m3.unit) == QVector{Rat(3)});

  StructureAlgebra m2 = matrix_algebra(2);
  BaseFieldTag q2 = rational_base(m2);
  CHECK(reduced_trace(m2, q2, unit_matrix_el(2, 0, 1)) == QVector{Rat(0)});

  StructureAlgebra h = quaternion_algebra(-1, -1);
  BaseFieldTag qh = rational_base(h);
  AlgebraElement x{Rat(5), Rat(2), Rat(-1), Rat(7)};
  CHECK(reduced_trace(h, qh, x) == QVector{Rat(10)});  // 2a for a + bi + cj + dk

  // tr(xy) = tr(yx).
  SplitMix64 rng{3};
  for (int it = 0; it < 10; ++it) {
    AlgebraElement u = random_element(m2, rng), v = random_element(m2, rng);
    CHECK(reduced_trace(m2, q2, m2.mul(u, v)) == reduced_trace(m2, q2, m2.mul(v, u)));
  }

  // Center mismatch is rejected.
  CHECK_THROWS_AS(reduced_trace(m2, rational_base(h), m2.unit), std::invalid_argument);
}

TEST_CASE("reduced_trace over a larger center") {
  // Mat_2(Q(i)): center Q(i), m = 2; trd(1) = 2 in the field.
  StructureAlgebra k = named_field("gauss");
  StructureAlgebra a = matrix_algebra_over_field(k, 2);
  REQUIRE(!a.check().has_value());
  Subalgebra z = center(a);
  REQUIRE(z.dim() == 2);
  BaseFieldTag tag = field_certify(z);
  REQUIRE(tag.is_field_certified);
  AlgebraElement tr1 = reduced_trace(a, tag, a.unit);
  CHECK(tag.subalgebra.to_parent(tr1) == vec_scale(Rat(2), a.unit));
}

TEST_CASE("project_to_sl") {
  StructureAlgebra m2 = matrix_algebra(2);
  BaseFieldTag q2 = rational_base(m2);
  CHECK(vec_is_zero(project_to_sl(m2, q2, vec_scale(Rat(7), m2.unit))));
  AlgebraElement e12 = unit_matrix_el(2, 0, 1);
  CHECK(project_to_sl(m2, q2, e12) == e12);
  AlgebraElement d31{Rat(3), Rat(0), Rat(0), Rat(1)};
  CHECK(project_to_sl(m2, q2, d31) == AlgebraElement{Rat(1), Rat(0), Rat(0), Rat(-1)});
  SplitMix64 rng{5};
  for (int it = 0; it < 10; ++it) {
    AlgebraElement f = random_element(m2, rng);
    CHECK(reduced_trace(m2, q2, project_to_sl(m2, q2, f)) == QVector{Rat(0)});
  }
}

TEST_CASE("jordan_chevalley examples") {
  StructureAlgebra m2 = matrix_algebra(2);
  // [[1,1],[0,1]]: s = Id, n = E12, witness constant 1.
  AlgebraElement f = matrix_as_element(QMatrix::from_rows({{1, 1}, {0, 1}}));
  JordanPair jp = jordan_chevalley(m2, f);
  CHECK(jp.semisimple_part == m2.unit);
  CHECK(jp.nilpotent_part == unit_matrix_el(2, 0, 1));
  CHECK(jp.witness_poly == QPoly::from_ints({1}));

  // Semisimple f: (f, 0).
  AlgebraElement d{Rat(2), Rat(0), Rat(0), Rat(5)};
  JordanPair jd = jordan_chevalley(m2, d);
  CHECK(jd.semisimple_part == d);
  CHECK(vec_is_zero(jd.nilpotent_part));

  // Pure nilpotent.
  JordanPair jn = jordan_chevalley(m2, unit_matrix_el(2, 0, 1));
  CHECK(vec_is_zero(jn.semisimple_part));
  CHECK(jn.nilpotent_part == unit_matrix_el(2, 0, 1));

  // Zero input.
  JordanPair jz = jordan_chevalley(m2, vec_zero(4));
  CHECK(vec_is_zero(jz.semisimple_part));
  CHECK(vec_is_zero(jz.nilpotent_part));
  CHECK(jz.witness_poly.is_zero());
}

TEST_CASE("jordan_chevalley properties on random elements") {
  std::vector<StructureAlgebra> algebras{matrix_algebra(2), matrix_algebra(3),
                                         group_algebra("S3"), quaternion_algebra(-1, -1)};
  SplitMix64 rng{11};
  for (const auto& a : algebras) {
    for (int it = 0; it < 8; ++it) {
      AlgebraElement f = random_element(a, rng);
      JordanPair jp = jordan_chevalley(a, f);
      CHECK(vec_add(jp.semisimple_part, jp.nilpotent_part) == f);
      CHECK(a.mul(jp.semisimple_part, jp.nilpotent_part) ==
            a.mul(jp.nilpotent_part, jp.semisimple_part));
      if (!vec_is_zero(jp.semisimple_part)) {
        QPoly mu_s = minpoly_element(a, jp.semisimple_part);
        CHECK(squarefree_part(mu_s) == mu_s);
      }
      CHECK(is_nilpotent_element(a, jp.nilpotent_part));
      CHECK(a.eval_poly(jp.witness_poly, f) == jp.semisimple_part);
    }
  }
}

TEST_CASE("jordan_chevalley conjugation equivariance") {
  StructureAlgebra m3 = matrix_algebra(3);
  SplitMix64 rng{13};
  for (int it = 0; it < 6; ++it) {
    AlgebraElement f = random_element(m3, rng, -2, 2);
    AlgebraElement g;
    std::optional<QMatrix> ginv_m;
    do {
      g = random_element(m3, rng, -2, 2);
      ginv_m = inverse(m3.left_regular(g));
    } while (!ginv_m);
    AlgebraElement ginv = ginv_m->apply(m3.unit);
    AlgebraElement conj = m3.mul(m3.mul(g, f), ginv);
    JordanPair jf = jordan_chevalley(m3, f);
    JordanPair jc = jordan_chevalley(m3, conj);
    CHECK(jc.semisimple_part == m3.mul(m3.mul(g, jf.semisimple_part), ginv));
    CHECK(jc.nilpotent_part == m3.mul(m3.mul(g, jf.nilpotent_part), ginv));
  }
}

TEST_CASE("jacobson_morozov") {
  StructureAlgebra m2 = matrix_algebra(2);
  BaseFieldTag q2 = rational_base(m2);
  Sl2Triple t = jacobson_morozov(m2, q2, unit_matrix_el(2, 0, 1));
  CHECK(t.h == AlgebraElement{Rat(1), Rat(0), Rat(0), Rat(-1)});
  CHECK(t.y == unit_matrix_el(2, 1, 0));
  CHECK(bracket(m2, t.h, t.e) == vec_scale(Rat(2), t.e));
  CHECK(bracket(m2, t.h, t.y) == vec_scale(Rat(-2), t.y));
  CHECK(bracket(m2, t.e, t.y) == t.h);

  // Regular nilpotent in Mat_3: h = diag(2,0,-2), y = 2 E21 + 2 E32.
  StructureAlgebra m3 = matrix_algebra(3);
  BaseFieldTag q3 = rational_base(m3);
  AlgebraElement e = vec_add(unit_matrix_el(3, 0, 1), unit_matrix_el(3, 1, 2));
  Sl2Triple t3 = jacobson_morozov(m3, q3, e);
  CHECK(bracket(m3, t3.h, t3.e) == vec_scale(Rat(2), t3.e));
  CHECK(bracket(m3, t3.h, t3.y) == vec_scale(Rat(-2), t3.y));
  CHECK(bracket(m3, t3.e, t3.y) == t3.h);
  CHECK(t3.h == matrix_as_element(QMatrix::from_rows({{2, 0, 0}, {0, 0, 0}, {0, 0, -2}})));
  CHECK(t3.y == matrix_as_element(QMatrix::from_rows({{0, 0, 0}, {2, 0, 0}, {0, 2, 0}})));

  // Triple spans a 3-dimensional space.
  CHECK(rank(QMatrix::from_columns({t3.e, t3.h, t3.y})) == 3);

  CHECK_THROWS_AS(jacobson_morozov(m2, q2, vec_zero(4)), std::invalid_argument);
  CHECK_THROWS_AS(jacobson_morozov(m2, q2, m2.unit), std::invalid_argument);
}

TEST_CASE("jacobson_morozov on all Jordan types up to 4") {
  struct Case {
    std::size_t n;
    std::vector<std::pair<std::size_t, std::size_t>> ones;
  };
  std::vector<Case> cases{
      {2, {{0, 1}}},                  // [2]
      {3, {{0, 1}}},                  // [2,1]
      {3, {{0, 1}, {1, 2}}},          // [3]
      {4, {{0, 1}}},                  // [2,1,1]
      {4, {{0, 1}, {2, 3}}},          // [2,2]
      {4, {{0, 1}, {1, 2}}},          // [3,1]
      {4, {{0, 1}, {1, 2}, {2, 3}}},  // [4]
  };
  for (const Case& c : cases) {
    StructureAlgebra a = matrix_algebra(c.n);
    BaseFieldTag q = rational_base(a);
    AlgebraElement e = vec_zero(c.n * c.n);
    for (auto [i, j] : c.ones) e[i * c.n + j] = 1;
    Sl2Triple t = jacobson_morozov(a, q, e);
    CHECK(bracket(a, t.h, t.e) == vec_scale(Rat(2), t.e));
    CHECK(bracket(a, t.h, t.y) == vec_scale(Rat(-2), t.y));
    CHECK(bracket(a, t.e, t.y) == t.h);
  }
}

TEST_CASE("sl2_decompose") {
  // Adjoint module of sl2 (dim 3) in basis (e, h, y): one block, n = 2.
  QMatrix ad_e = QMatrix::from_rows({{0, -2, 0}, {0, 0, 1}, {0, 0, 0}});
  QMatrix ad_h = QMatrix::from_rows({{2, 0, 0}, {0, 0, 0}, {0, 0, -2}});
  QMatrix ad_y = QMatrix::from_rows({{0, 0, 0}, {-1, 0, 0}, {0, 2, 0}});
  Sl2ModuleDecomposition dec = sl2_decompose(ad_e, ad_h, ad_y);
  REQUIRE(dec.blocks.size() == 1);
  CHECK(dec.blocks[0].highest_weight == 2);
  CHECK(dec.blocks[0].multiplicity == 1);

  // Mat_2(Q) under left multiplication by the standard triple: n = 1, mult 2.
  StructureAlgebra m2 = matrix_algebra(2);
  AlgebraElement e = unit_matrix_el(2, 0, 1), y = unit_matrix_el(2, 1, 0);
  AlgebraElement h{Rat(1), Rat(0), Rat(0), Rat(-1)};
  Sl2ModuleDecomposition dm = sl2_decompose(m2.left_regular(e), m2.left_regular(h),
                                            m2.left_regular(y));
  REQUIRE(dm.blocks.size() == 1);
  CHECK(dm.blocks[0].highest_weight == 1);
  CHECK(dm.blocks[0].multiplicity == 2);

  // Trivial 0-dim module.
  Sl2ModuleDecomposition dz = sl2_decompose(QMatrix(0, 0), QMatrix(0, 0), QMatrix(0, 0));
  CHECK(dz.blocks.empty());

  CHECK_THROWS_AS(sl2_decompose(ad_e, ad_h, ad_e), std::invalid_argument);
}

TEST_CASE("sl2_decompose bookkeeping properties") {
  StructureAlgebra m3 = matrix_algebra(3);
  BaseFieldTag q3 = rational_base(m3);
  AlgebraElement e = vec_add(unit_matrix_el(3, 0, 1), unit_matrix_el(3, 1, 2));
  Sl2Triple t = jacobson_morozov(m3, q3, e);
  QMatrix me = m3.left_regular(t.e), mh = m3.left_regular(t.h), my = m3.left_regular(t.y);
  Sl2ModuleDecomposition dec = sl2_decompose(me, mh, my);
  std::size_t total = 0;
  for (const auto& b : dec.blocks) total += (b.highest_weight + 1) * b.multiplicity;
  CHECK(total == 9);
  // Weight-space dimensions are symmetric under negation.
  for (long w = -8; w <= 8; ++w)
    CHECK(integer_eigenspace(mh, w).cols() == integer_eigenspace(mh, -w).cols());
  // action_e annihilates exactly the top vector of each strand.
  for (const auto& b : dec.blocks)
    for (std::size_t s = 0; s < b.multiplicity; ++s)
      for (unsigned p = 0; p <= b.highest_weight; ++p) {
        QVector v = b.adapted_basis.col(s * (b.highest_weight + 1) + p);
        CHECK(vec_is_zero(me.apply(v)) == (p == 0));
      }
}

TEST_CASE("matrix_units_from_sl2") {
  StructureAlgebra m2 = matrix_algebra(2);
  AlgebraElement e = unit_matrix_el(2, 0, 1), y = unit_matrix_el(2, 1, 0);
  AlgebraElement h{Rat(1), Rat(0), Rat(0), Rat(-1)};
  Subalgebra c = subalgebra_generated(m2, {e, h, y}, true);
  REQUIRE(c.dim() == 4);
  Sl2ModuleDecomposition dec = sl2_decompose(m2.left_regular(e), m2.left_regular(h),
                                             m2.left_regular(y));
  auto blocks = matrix_units_from_sl2(m2, c, dec);
  REQUIRE(blocks.size() == 1);
  const auto& units = blocks[0].units;
  REQUIRE(units.size() == 4);
  unsigned m = blocks[0].highest_weight + 1;
  for (unsigned j = 0; j < m; ++j)
    for (unsigned l = 0; l < m; ++l)
      for (unsigned p = 0; p < m; ++p)
        for (unsigned q = 0; q < m; ++q) {
          AlgebraElement prod = m2.mul(units[j * m + l], units[p * m + q]);
          AlgebraElement want = (l == p) ? units[j * m + q] : vec_zero(4);
          CHECK(prod == want);
        }
  AlgebraElement sum = vec_zero(4);
  for (unsigned j = 0; j < m; ++j) sum = vec_add(sum, units[j * m + j]);
  CHECK(sum == m2.unit);
  CHECK(rank(QMatrix::from_columns(units)) == c.dim());
}

TEST_CASE("matrix units: single weight-0 block gives the identity") {
  StructureAlgebra q = group_algebra("C1");
  Subalgebra c = subalgebra_generated(q, {}, true);
  Sl2ModuleDecomposition dec =
      sl2_decompose(QMatrix(1, 1), QMatrix(1, 1), QMatrix(1, 1));
  REQUIRE(dec.blocks.size() == 1);
  CHECK(dec.blocks[0].highest_weight == 0);
  auto blocks = matrix_units_from_sl2(q, c, dec);
  REQUIRE(blocks.size() == 1);
  REQUIRE(blocks[0].units.size() == 1);
  CHECK(blocks[0].units[0] == q.unit);
}

TEST_CASE("matrix units on a two-block module") {
  // Mat_2(Q) + Q: the triple acts through the first summand only; the
  // regular module decomposes into weight-1 strands and trivial strands.
  StructureAlgebra a = direct_sum(matrix_algebra(2), group_algebra("C1"));
  AlgebraElement e = vec_zero(5), h = vec_zero(5), y = vec_zero(5);
  e[0 * 2 + 1] = 1;  // E12 in the first summand
  y[1 * 2 + 0] = 1;
  h[0] = 1;
  h[3] = -1;
  Subalgebra c = subalgebra_generated(a, {e, h, y}, true);
  Sl2ModuleDecomposition dec = sl2_decompose(a.left_regular(e), a.left_regular(h),
                                             a.left_regular(y));
  auto blocks = matrix_units_from_sl2(a, c, dec);
  REQUIRE(blocks.size() == 2);
  // 4 + 1 units, cross products zero.
  std::size_t units_total = 0;
  for (const auto& b : blocks) units_total += b.units.size();
  CHECK(units_total == 5);
  for (const auto& u : blocks[0].units)
    for (const auto& v : blocks[1].units) {
      CHECK(vec_is_zero(a.mul(u, v)));
      CHECK(vec_is_zero(a.mul(v, u)));
    }
}

TEST_CASE("commutant") {
  CHECK(commutant({QMatrix::identity(2)}).dim() == 4);

  // All of Mat_2 on its standard module: scalars only.
  std::vector<QMatrix> std_action;
  for (std::size_t i = 0; i < 4; ++i) {
    QMatrix m(2, 2);
    m.at(i / 2, i % 2) = 1;
    std_action.push_back(m);
  }
  CHECK(commutant(std_action).dim() == 1);

  // Mat_2 by left multiplication on itself: right multiplications, dim 4.
  StructureAlgebra m2 = matrix_algebra(2);
  std::vector<QMatrix> left_action;
  for (std::size_t i = 0; i < 4; ++i)
    left_action.push_back(m2.left_regular(vec_unit(4, i)));
  Subalgebra com = commutant(left_action);
  CHECK(com.dim() == 4);

  // Double commutant recovers the acting algebra's dimension.
  std::vector<QMatrix> com_action;
  for (std::size_t j = 0; j < com.dim(); ++j) {
    QMatrix m(4, 4);
    AlgebraElement v = com.basis.col(j);
    for (std::size_t i = 0; i < 16; ++i) m.at(i / 4, i % 4) = v[i];
    com_action.push_back(m);
  }
  CHECK(commutant(com_action).dim() == 4);
}
