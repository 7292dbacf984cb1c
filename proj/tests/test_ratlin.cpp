#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "endosplit/linalg.hpp"
#include "endosplit/generators.hpp"

using namespace endosplit;

namespace {

QMatrix random_matrix(SplitMix64& rng, std::size_t r, std::size_t c, long lo = -4, long hi = 4) {
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Rat(rng.range(lo, hi));
  return m;
}

}  // namespace

TEST_CASE("rref identity, zero and rank-1 cases") {
  auto id = QMatrix::identity(3);
  auto r = rref(id);
  CHECK(r.reduced == id);
  CHECK(r.pivot_cols == std::vector<std::size_t>{0, 1, 2});
  CHECK(r.rank == 3);

  QMatrix z(2, 2);
  auto rz = rref(z);
  CHECK(rz.reduced == z);
  CHECK(rz.rank == 0);
  CHECK(rz.pivot_cols.empty());

  // Hand elimination: [[1,2],[2,4]] -> [[1,2],[0,0]].
  auto m = QMatrix::from_rows({{1, 2}, {2, 4}});
  auto rm = rref(m);
  CHECK(rm.reduced == QMatrix::from_rows({{1, 2}, {0, 0}}));
  CHECK(rm.rank == 1);
}

TEST_CASE("rref transform replays the row operations") {
  SplitMix64 rng{7};
  for (int it = 0; it < 20; ++it) {
    std::size_t r = 1 + it % 5, c = 1 + (it * 3) % 6;
    QMatrix m = random_matrix(rng, r, c);
    auto res = rref_with_transform(m);
    CHECK(res.transform * m == res.reduced);
    CHECK(inverse(res.transform).has_value());
    CHECK(res.reduced == rref(m).reduced);
  }
}

TEST_CASE("kernel_basis") {
  CHECK(kernel_basis(QMatrix::identity(2)).cols() == 0);
  CHECK(kernel_basis(QMatrix(2, 2)).cols() == 2);

  auto m = QMatrix::from_rows({{1, 1}});
  auto k = kernel_basis(m);
  REQUIRE(k.cols() == 1);
  CHECK((m * k).is_zero());
  CHECK(k.at(0, 0) * k.at(1, 0) < 0);  // span{(1,-1)} up to scale

  SplitMix64 rng{11};
  for (int it = 0; it < 20; ++it) {
    QMatrix m2 = random_matrix(rng, 2 + it % 4, 2 + (it * 5) % 5);
    QMatrix k2 = kernel_basis(m2);
    CHECK((m2 * k2).is_zero());
    CHECK(k2.cols() == m2.cols() - rank(m2));
    if (k2.cols() > 0) CHECK(rank(k2) == k2.cols());
  }
}

TEST_CASE("solve") {
  QVector b{Rat(5), Rat(-2)};
  auto x = solve(QMatrix::identity(2), b);
  REQUIRE(x.has_value());
  CHECK(*x == b);

  CHECK(!solve(QMatrix::from_rows({{1, 1}, {1, 1}}), QVector{Rat(1), Rat(2)}).has_value());

  auto d = solve(QMatrix::from_rows({{2, 0}, {0, 3}}), QVector{Rat(4), Rat(9)});
  REQUIRE(d.has_value());
  CHECK(*d == QVector{Rat(2), Rat(3)});

  CHECK_THROWS_AS(solve(QMatrix::identity(2), QVector{Rat(1)}), std::invalid_argument);
}

TEST_CASE("inverse") {
  CHECK(*inverse(QMatrix::identity(3)) == QMatrix::identity(3));
  auto rot = QMatrix::from_rows({{0, -1}, {1, 0}});
  CHECK(*inverse(rot) == QMatrix::from_rows({{0, 1}, {-1, 0}}));
  CHECK(!inverse(QMatrix::from_rows({{1, 1}, {2, 2}})).has_value());
  CHECK_THROWS_AS(inverse(QMatrix(2, 3)), std::invalid_argument);

  SplitMix64 rng{13};
  for (int it = 0; it < 10; ++it) {
    QMatrix m = random_matrix(rng, 4, 4);
    auto inv = inverse(m);
    if (inv) CHECK((m * *inv) == QMatrix::identity(4));
  }
}

TEST_CASE("charpoly basics") {
  CHECK(charpoly(QMatrix(2, 2)) == QPoly::from_ints({0, 0, 1}));
  CHECK(charpoly(QMatrix::from_rows({{0, -1}, {1, 0}})) == QPoly::from_ints({1, 0, 1}));
  // diag(1,2,3) -> (t-1)(t-2)(t-3) = t^3 - 6t^2 + 11t - 6
  QMatrix d(3, 3);
  d.at(0, 0) = 1;
  d.at(1, 1) = 2;
  d.at(2, 2) = 3;
  CHECK(charpoly(d) == QPoly::from_ints({-6, 11, -6, 1}));
  CHECK_THROWS_AS(charpoly(QMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("charpoly multiplicative on block diagonals; Cayley-Hamilton") {
  SplitMix64 rng{17};
  for (int it = 0; it < 10; ++it) {
    QMatrix a = random_matrix(rng, 3, 3), b = random_matrix(rng, 2, 2);
    QPoly pa = charpoly(a), pb = charpoly(b);
    CHECK(charpoly(block_diag({a, b})) == pa * pb);
    CHECK(pa.eval_matrix(a).is_zero());
    CHECK(pb.eval_matrix(b).is_zero());
  }
}

TEST_CASE("minpoly_matrix") {
  CHECK(minpoly_matrix(QMatrix::identity(4)) == QPoly::from_ints({-1, 1}));
  CHECK(minpoly_matrix(QMatrix::from_rows({{1, 1}, {0, 1}})) == QPoly::from_ints({1, -2, 1}));
  QMatrix d(2, 2);
  d.at(0, 0) = 1;
  d.at(1, 1) = 1;
  CHECK(minpoly_matrix(d) == QPoly::from_ints({-1, 1}));

  SplitMix64 rng{19};
  for (int it = 0; it < 15; ++it) {
    QMatrix m = random_matrix(rng, 2 + it % 4, 2 + it % 4, -2, 2);
    QPoly mp = minpoly_matrix(m), cp = charpoly(m);
    CHECK(mp.eval_matrix(m).is_zero());
    CHECK(cp.divmod(mp).second.is_zero());  // minpoly divides charpoly
  }
}

TEST_CASE("integer_eigenspace") {
  QMatrix d(2, 2);
  d.at(0, 0) = 1;
  d.at(1, 1) = -1;
  QMatrix e = integer_eigenspace(d, 1);
  REQUIRE(e.cols() == 1);
  CHECK(e.at(0, 0) != 0);
  CHECK(e.at(1, 0) == 0);
  CHECK(integer_eigenspace(QMatrix::identity(3), 0).cols() == 0);
  CHECK(integer_eigenspace(QMatrix(2, 2), 0).cols() == 2);
}

TEST_CASE("solve and inverse round-trips are exact") {
  SplitMix64 rng{23};
  for (int it = 0; it < 20; ++it) {
    QMatrix a = random_matrix(rng, 4, 4, -6, 6);
    QVector x(4);
    for (auto& v : x) v = make_rat(rng.range(-9, 9), 1 + rng.range(0, 4));
    QVector b = a.apply(x);
    auto got = solve(a, b);
    REQUIRE(got.has_value());
    CHECK(a.apply(*got) == b);
  }
}

TEST_CASE("column space helpers") {
  auto m = QMatrix::from_rows({{1, 2, 3}, {2, 4, 6}, {0, 0, 1}});
  QMatrix cs = column_space_basis(m);
  CHECK(cs.cols() == rank(m));
  for (std::size_t j = 0; j < m.cols(); ++j) CHECK(in_column_space(cs, m.col(j)));
}
