#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "endosplit/decomp.hpp"
#include "endosplit/generators.hpp"

using namespace endosplit;

namespace {

// E_ij as an element of matrix_algebra(n).
AlgebraElement unit_matrix_el(std::size_t n, std::size_t i, std::size_t j) {
  return vec_unit(n * n, i * n + j);
}

// Upper-triangular 2x2 matrices: basis {E11, E12, E22}, dim 3.
StructureAlgebra upper_triangular2() {
  StructureAlgebra a;
  a.dim = 3;
  a.constants.assign(9, vec_zero(3));
  a.constants[0 * 3 + 0][0] = 1;
  a.constants[0 * 3 + 1][1] = 1;
  a.constants[1 * 3 + 2][1] = 1;
  a.constants[2 * 3 + 2][2] = 1;
  a.unit = QVector{Rat(1), Rat(0), Rat(1)};
  return a;
}

// Brute-force nilpotent-ideal search over a small coordinate grid.
QMatrix bruteforce_radical(const StructureAlgebra& a) {
  std::vector<QVector> found;
  std::vector<long> coords(a.dim, -1);
  for (;;) {
    AlgebraElement x(a.dim);
    bool nonzero = false;
    for (std::size_t i = 0; i < a.dim; ++i) {
      x[i] = coords[i];
      nonzero = nonzero || coords[i] != 0;
    }
    if (nonzero) {
      // Two-sided ideal generated by x.
      std::vector<AlgebraElement> gens{x};
      for (std::size_t i = 0; i < a.dim; ++i) {
        gens.push_back(a.mul(vec_unit(a.dim, i), x));
        gens.push_back(a.mul(x, vec_unit(a.dim, i)));
        for (std::size_t j = 0; j < a.dim; ++j)
          gens.push_back(a.mul(vec_unit(a.dim, i), a.mul(x, vec_unit(a.dim, j))));
      }
      RrefResult span = rref(QMatrix::from_rat_rows(gens));
      std::vector<QVector> ideal;
      for (std::size_t i = 0; i < span.rank; ++i) ideal.push_back(span.reduced.row(i));
      // Nilpotency: powers of the ideal shrink to zero.
      std::vector<QVector> power = ideal;
      bool nilpotent = false;
      for (std::size_t it = 0; it <= a.dim + 1; ++it) {
        std::vector<QVector> next;
        for (const QVector& u : power)
          for (const QVector& v : ideal) next.push_back(a.mul(u, v));
        RrefResult rr = rref(QMatrix::from_rat_rows(next));
        if (rr.rank == 0) {
          nilpotent = true;
          break;
        }
        power.clear();
        for (std::size_t i = 0; i < rr.rank; ++i) power.push_back(rr.reduced.row(i));
      }
      if (nilpotent) found.push_back(x);
    }
    std::size_t pos = 0;
    while (pos < a.dim && coords[pos] == 1) coords[pos++] = -1;
    if (pos == a.dim) break;
    ++coords[pos];
  }
  if (found.empty()) return QMatrix(a.dim, 0);
  RrefResult rr = rref(QMatrix::from_rat_rows(found));
  std::vector<QVector> basis;
  for (std::size_t i = 0; i < rr.rank; ++i) basis.push_back(rr.reduced.row(i));
  return QMatrix::from_columns(basis);
}

}  // namespace

TEST_CASE("structure algebra multiplication") {
  StructureAlgebra m2 = matrix_algebra(2);
  CHECK(!m2.check().has_value());
  AlgebraElement x{Rat(1), Rat(2), Rat(3), Rat(4)};
  CHECK(m2.mul(x, m2.unit) == x);
  // E12 * E21 = E11, matrix product oracle.
  CHECK(m2.mul(unit_matrix_el(2, 0, 1), unit_matrix_el(2, 1, 0)) == unit_matrix_el(2, 0, 0));

  StructureAlgebra c2 = group_algebra("C2");
  CHECK(!c2.check().has_value());
  AlgebraElement g = vec_unit(2, 1);
  CHECK(c2.mul(g, g) == c2.unit);
}

TEST_CASE("left_regular") {
  StructureAlgebra c2 = group_algebra("C2");
  CHECK(c2.left_regular(c2.unit) == QMatrix::identity(2));
  CHECK(c2.left_regular(vec_zero(2)).is_zero());
  CHECK(c2.left_regular(vec_unit(2, 1)) == QMatrix::from_rows({{0, 1}, {1, 0}}));
  // Linearity spot check.
  StructureAlgebra m2 = matrix_algebra(2);
  AlgebraElement x{Rat(1), Rat(-2), Rat(0), Rat(3)}, y{Rat(2), Rat(1), Rat(1), Rat(1)};
  CHECK(m2.left_regular(vec_add(x, y)) == m2.left_regular(x) + m2.left_regular(y));
}

TEST_CASE("minpoly_element") {
  StructureAlgebra m2 = matrix_algebra(2);
  CHECK(minpoly_element(m2, m2.unit) == QPoly::from_ints({-1, 1}));
  CHECK(minpoly_element(m2, unit_matrix_el(2, 0, 1)) == QPoly::from_ints({0, 0, 1}));

  StructureAlgebra h = quaternion_algebra(-1, -1);
  CHECK(!h.check().has_value());
  CHECK(minpoly_element(h, vec_unit(4, 1)) == QPoly::from_ints({1, 0, 1}));
}

TEST_CASE("subalgebra_generated") {
  StructureAlgebra m2 = matrix_algebra(2);
  Subalgebra one = subalgebra_generated(m2, {m2.unit}, false);
  CHECK(one.dim() == 1);

  Subalgebra all = subalgebra_generated(
      m2, {unit_matrix_el(2, 0, 1), unit_matrix_el(2, 1, 0)}, false);
  CHECK(all.dim() == 4);

  AlgebraElement d{Rat(1), Rat(0), Rat(0), Rat(2)};  // diag(1,2)
  Subalgebra diag = subalgebra_generated(m2, {d}, true);
  CHECK(diag.dim() == 2);
  CHECK(diag.unit_in_parent.has_value());
  CHECK(*diag.unit_in_parent == m2.unit);
}

TEST_CASE("centralizer") {
  StructureAlgebra m2 = matrix_algebra(2);
  CHECK(centralizer(m2, {m2.unit}).dim() == 4);

  AlgebraElement d{Rat(1), Rat(0), Rat(0), Rat(2)};
  Subalgebra z = centralizer(m2, {d});
  CHECK(z.dim() == 2);
  CHECK(z.contains(unit_matrix_el(2, 0, 0)));
  CHECK(z.contains(unit_matrix_el(2, 1, 1)));

  StructureAlgebra h = quaternion_algebra(-1, -1);
  Subalgebra zi = centralizer(h, {vec_unit(4, 1)});
  CHECK(zi.dim() == 2);
  CHECK(zi.contains(h.unit));
  CHECK(zi.contains(vec_unit(4, 1)));
}

TEST_CASE("center") {
  CHECK(center(matrix_algebra(2)).dim() == 1);
  CHECK(center(group_algebra("C2")).dim() == 2);
  CHECK(center(direct_sum(matrix_algebra(2), group_algebra("C1"))).dim() == 2);
}

TEST_CASE("radical") {
  CHECK(radical(matrix_algebra(2)).dim() == 0);
  CHECK(radical(direct_sum(group_algebra("C1"), group_algebra("C1"))).dim() == 0);

  StructureAlgebra ut = upper_triangular2();
  CHECK(!ut.check().has_value());
  Subalgebra rad = radical(ut);
  REQUIRE(rad.dim() == 1);
  CHECK(rad.contains(vec_unit(3, 1)));  // span{E12}

  // The radical is an ideal: closed under both-sided basis multiplication.
  for (std::size_t i = 0; i < ut.dim; ++i) {
    AlgebraElement b = vec_unit(ut.dim, i);
    for (std::size_t j = 0; j < rad.dim(); ++j) {
      CHECK(rad.contains(ut.mul(b, rad.basis.col(j))));
      CHECK(rad.contains(ut.mul(rad.basis.col(j), b)));
    }
  }
}

TEST_CASE("radical matches brute-force nilpotent-ideal search (dim <= 6)") {
  std::vector<StructureAlgebra> corpus{
      matrix_algebra(2),
      group_algebra("C2"),
      group_algebra("C3"),
      upper_triangular2(),
      direct_sum(upper_triangular2(), group_algebra("C2")),
      quaternion_algebra(-1, -1),
  };
  for (const auto& a : corpus) {
    QMatrix oracle = bruteforce_radical(a);
    Subalgebra rad = radical(a);
    CHECK(rad.dim() == oracle.cols());
    for (std::size_t j = 0; j < oracle.cols(); ++j) CHECK(rad.contains(oracle.col(j)));
  }
}

TEST_CASE("central_idempotents") {
  // Simple algebra: only the unit.
  auto ids_m2 = central_idempotents(matrix_algebra(2));
  REQUIRE(ids_m2.size() == 1);
  CHECK(ids_m2[0] == matrix_algebra(2).unit);

  // Q[C2]: (1+g)/2 and (1-g)/2.
  auto ids_c2 = central_idempotents(group_algebra("C2"));
  REQUIRE(ids_c2.size() == 2);
  std::set<QVector> got(ids_c2.begin(), ids_c2.end());
  std::set<QVector> want{QVector{make_rat(1, 2), make_rat(1, 2)},
                         QVector{make_rat(1, 2), make_rat(-1, 2)}};
  CHECK(got == want);

  // Q[S3]: three idempotents; all four defining relations, full enumeration.
  StructureAlgebra s3 = group_algebra("S3");
  auto ids_s3 = central_idempotents(s3);
  REQUIRE(ids_s3.size() == 3);
  AlgebraElement sum = vec_zero(s3.dim);
  for (std::size_t i = 0; i < ids_s3.size(); ++i) {
    CHECK(s3.mul(ids_s3[i], ids_s3[i]) == ids_s3[i]);
    for (std::size_t j = 0; j < ids_s3.size(); ++j)
      if (i != j) CHECK(vec_is_zero(s3.mul(ids_s3[i], ids_s3[j])));
    for (std::size_t b = 0; b < s3.dim; ++b) {
      AlgebraElement bb = vec_unit(s3.dim, b);
      CHECK(s3.mul(ids_s3[i], bb) == s3.mul(bb, ids_s3[i]));
    }
    sum = vec_add(sum, ids_s3[i]);
  }
  CHECK(sum == s3.unit);

  CHECK_THROWS_AS(central_idempotents(upper_triangular2()), std::invalid_argument);
}

TEST_CASE("simple_factors") {
  auto f_c2 = simple_factors(group_algebra("C2"));
  REQUIRE(f_c2.size() == 2);
  CHECK(f_c2[0].dim() == 1);
  CHECK(f_c2[1].dim() == 1);

  auto f_m2 = simple_factors(matrix_algebra(2));
  REQUIRE(f_m2.size() == 1);
  CHECK(f_m2[0].dim() == 4);

  auto f_s3 = simple_factors(group_algebra("S3"));
  REQUIRE(f_s3.size() == 3);
  std::multiset<std::size_t> dims;
  std::size_t total = 0;
  for (const auto& f : f_s3) {
    dims.insert(f.dim());
    total += f.dim();
  }
  CHECK(dims == std::multiset<std::size_t>{1, 1, 4});
  CHECK(total == 6);

  // Direct-sum map is a linear isomorphism: stacked bases have full rank.
  std::vector<QVector> all;
  for (const auto& f : f_s3)
    for (std::size_t j = 0; j < f.dim(); ++j) all.push_back(f.basis.col(j));
  CHECK(rank(QMatrix::from_columns(all)) == 6);
}

TEST_CASE("field_certify") {
  StructureAlgebra m2 = matrix_algebra(2);
  Subalgebra q1 = subalgebra_generated(m2, {m2.unit}, true);
  CHECK(field_certify(q1).is_field_certified);

  StructureAlgebra h = quaternion_algebra(-1, -1);
  Subalgebra qi = centralizer(h, {vec_unit(4, 1)});
  CHECK(field_certify(qi).is_field_certified);  // iso to Q(i)

  Subalgebra c2_whole = subalgebra_generated(group_algebra("C2"), {vec_unit(2, 1)}, true);
  CHECK(!field_certify(c2_whole).is_field_certified);

  Subalgebra noncomm = subalgebra_generated(m2, {unit_matrix_el(2, 0, 1), unit_matrix_el(2, 1, 0)},
                                            true);
  CHECK_THROWS_AS(field_certify(noncomm), std::invalid_argument);
}

TEST_CASE("double centralizer monotonicity") {
  StructureAlgebra m2 = matrix_algebra(2);
  std::vector<AlgebraElement> sets[] = {
      {unit_matrix_el(2, 0, 1)},
      {AlgebraElement{Rat(1), Rat(0), Rat(0), Rat(2)}},
      {unit_matrix_el(2, 0, 0), unit_matrix_el(2, 1, 1)},
  };
  for (const auto& s : sets) {
    Subalgebra z = centralizer(m2, s);
    std::vector<AlgebraElement> zbasis;
    for (std::size_t j = 0; j < z.dim(); ++j) zbasis.push_back(z.basis.col(j));
    Subalgebra zz = centralizer(m2, zbasis);
    Subalgebra gen = subalgebra_generated(m2, s, true);
    for (std::size_t j = 0; j < gen.dim(); ++j) CHECK(zz.contains(gen.basis.col(j)));
  }
}

TEST_CASE("group algebras of all orders <= 12 are semisimple and associative") {
  for (const std::string& name : small_group_names()) {
    StructureAlgebra a = group_algebra(name);
    INFO(name);
    CHECK(!a.check().has_value());
    CHECK(is_semisimple(a));
  }
}

TEST_CASE("conjugated algebras stay associative and semisimple") {
  StructureAlgebra base = direct_sum(matrix_algebra(2), group_algebra("C2"));
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    ConjugatedAlgebra conj = conjugate_algebra(base, seed);
    CHECK(!conj.algebra.check().has_value());
    CHECK(is_semisimple(conj.algebra));
    CHECK(center(conj.algebra).dim() == center(base).dim());
  }
}
