#include "endosplit/generators.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace endosplit {

namespace {

using Table = std::vector<std::vector<std::size_t>>;

Table cyclic_table(std::size_t n) {
  Table t(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return t;
}

Table product_table(const Table& a, const Table& b) {
  std::size_t na = a.size(), nb = b.size();
  Table t(na * nb, std::vector<std::size_t>(na * nb));
  for (std::size_t i = 0; i < na * nb; ++i)
    for (std::size_t j = 0; j < na * nb; ++j) {
      std::size_t ia = i / nb, ib = i % nb, ja = j / nb, jb = j % nb;
      t[i][j] = a[ia][ja] * nb + b[ib][jb];
    }
  return t;
}

// Dihedral of order 2n: elements r^i s^e encoded as i + n*e.
Table dihedral_table(std::size_t n) {
  Table t(2 * n, std::vector<std::size_t>(2 * n));
  auto enc = [n](std::size_t i, std::size_t e) { return i + n * e; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t e = 0; e < 2; ++e)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t f = 0; f < 2; ++f) {
          // (r^i s^e)(r^j s^f) = r^(i + j or i - j) s^(e+f)
          std::size_t k = e == 0 ? (i + j) % n : (i + n - j % n) % n;
          t[enc(i, e)][enc(j, f)] = enc(k, (e + f) % 2);
        }
  return t;
}

// Quaternion group {1,-1,i,-i,j,-j,k,-k}: sign * unit encoded as u*2 + (s<0).
Table quaternion_group_table() {
  // Units 0..3 = 1, i, j, k with the Hamilton rules.
  auto mul_unit = [](std::size_t a, std::size_t b, int& sign) {
    static const std::size_t prod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    sign = sgn[a][b];
    return prod[a][b];
  };
  Table t(8, std::vector<std::size_t>(8));
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b) {
      std::size_t ua = a / 2, ub = b / 2;
      int sa = a % 2 ? -1 : 1, sb = b % 2 ? -1 : 1;
      int s;
      std::size_t u = mul_unit(ua, ub, s);
      int total = sa * sb * s;
      t[a][b] = u * 2 + (total < 0 ? 1 : 0);
    }
  return t;
}

// Alternating group A4 as even permutations of {0,1,2,3}, lexicographic.
Table alternating4_table() {
  std::vector<std::array<int, 4>> perms;
  std::array<int, 4> p{0, 1, 2, 3};
  do {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (p[i] > p[j]) ++inv;
    if (inv % 2 == 0) perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  auto index_of = [&perms](const std::array<int, 4>& q) {
    for (std::size_t i = 0; i < perms.size(); ++i)
      if (perms[i] == q) return i;
    throw std::logic_error("A4: permutation not found");
  };
  Table t(12, std::vector<std::size_t>(12));
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 12; ++j) {
      std::array<int, 4> comp;
      for (int x = 0; x < 4; ++x) comp[x] = perms[i][perms[j][x]];
      t[i][j] = index_of(comp);
    }
  return t;
}

// Dicyclic group of order 12: a^6 = 1, b^2 = a^3, b a = a^-1 b;
// elements a^i b^e encoded as i + 6*e.
Table dicyclic3_table() {
  Table t(12, std::vector<std::size_t>(12));
  auto enc = [](std::size_t i, std::size_t e) { return i + 6 * e; };
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t e = 0; e < 2; ++e)
      for (std::size_t j = 0; j < 6; ++j)
        for (std::size_t f = 0; f < 2; ++f) {
          std::size_t k, g;
          if (e == 0) {
            k = (i + j) % 6;
            g = f;
          } else {
            // b a^j = a^{-j} b ; b^2 = a^3
            k = (i + 6 - j % 6) % 6;
            g = 1 + f;
            if (g == 2) {
              g = 0;
              k = (k + 3) % 6;
            }
          }
          t[enc(i, e)][enc(j, f)] = enc(k, g);
        }
  return t;
}

const std::map<std::string, Table (*)()>& special_groups() {
  static const std::map<std::string, Table (*)()> m{
      {"S3", [] { return dihedral_table(3); }},
      {"D4", [] { return dihedral_table(4); }},
      {"D5", [] { return dihedral_table(5); }},
      {"D6", [] { return dihedral_table(6); }},
      {"Q8", quaternion_group_table},
      {"A4", alternating4_table},
      {"Dic3", dicyclic3_table},
  };
  return m;
}

}  // namespace

const std::vector<std::string>& small_group_names() {
  static const std::vector<std::string> names{
      "C1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "C7",
      "C8", "C4xC2", "C2xC2xC2", "D4", "Q8", "C9", "C3xC3", "C10", "D5",
      "C11", "C12", "C6xC2", "D6", "A4", "Dic3"};
  return names;
}

Table group_table(const std::string& name) {
  auto it = special_groups().find(name);
  if (it != special_groups().end()) return it->second();
  if (name.size() >= 2 && name[0] == 'C') {
    // "Cn" or products "CnxCm" / "CnxCmxCk".
    std::vector<std::size_t> orders;
    std::size_t pos = 0;
    while (pos < name.size()) {
      if (name[pos] != 'C') throw std::invalid_argument("group_table: unknown group " + name);
      std::size_t end = name.find('x', pos);
      std::string num = name.substr(pos + 1, end == std::string::npos ? end : end - pos - 1);
      orders.push_back(std::stoul(num));
      pos = end == std::string::npos ? name.size() : end + 1;
    }
    Table t = cyclic_table(orders[0]);
    for (std::size_t i = 1; i < orders.size(); ++i) t = product_table(t, cyclic_table(orders[i]));
    return t;
  }
  throw std::invalid_argument("group_table: unknown group " + name);
}

StructureAlgebra group_algebra(const std::string& name) {
  Table t = group_table(name);
  std::size_t n = t.size();
  StructureAlgebra a;
  a.dim = n;
  a.constants.assign(n * n, vec_zero(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a.constants[i * n + j][t[i][j]] = 1;
  a.unit = vec_unit(n, 0);
  return a;
}

StructureAlgebra quaternion_algebra(long a_param, long b_param) {
  StructureAlgebra a;
  a.dim = 4;
  a.constants.assign(16, vec_zero(4));
  const Rat A(a_param), B(b_param);
  auto set = [&a](std::size_t i, std::size_t j, std::size_t k, const Rat& c) {
    a.constants[i * 4 + j][k] = c;
  };
  // Basis 0,1,2,3 = 1, i, j, k.
  for (std::size_t x = 0; x < 4; ++x) {
    set(0, x, x, Rat(1));
    if (x) set(x, 0, x, Rat(1));
  }
  set(1, 1, 0, A);            // i i = a
  set(2, 2, 0, B);            // j j = b
  set(3, 3, 0, -(A * B));     // k k = -ab
  set(1, 2, 3, Rat(1));       // i j = k
  set(2, 1, 3, Rat(-1));      // j i = -k
  set(1, 3, 2, A);            // i k = a j
  set(3, 1, 2, -A);           // k i = -a j
  set(2, 3, 1, -B);           // j k = -b i
  set(3, 2, 1, B);            // k j = b i
  a.unit = vec_unit(4, 0);
  return a;
}

StructureAlgebra field_algebra(const QPoly& mu) {
  if (mu.degree() < 1 || mu.lc() != 1)
    throw std::invalid_argument("field_algebra: modulus must be monic of degree >= 1");
  std::size_t d = static_cast<std::size_t>(mu.degree());
  StructureAlgebra a;
  a.dim = d;
  a.constants.assign(d * d, vec_zero(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      QVector c(i + j + 1, Rat(0));
      c[i + j] = 1;
      QPoly rem = QPoly(std::move(c)) % mu;
      for (std::size_t k = 0; k < d; ++k) a.constants[i * d + j][k] = rem.coeff(k);
    }
  a.unit = vec_unit(d, 0);
  return a;
}

StructureAlgebra named_field(const std::string& name) {
  if (name == "rational") return field_algebra(QPoly::from_ints({0, 1}));
  if (name == "gauss") return field_algebra(QPoly::from_ints({1, 0, 1}));
  if (name == "sqrt2") return field_algebra(QPoly::from_ints({-2, 0, 1}));
  if (name == "zeta5") return field_algebra(QPoly::from_ints({1, 1, 1, 1, 1}));
  throw std::invalid_argument("named_field: unknown field " + name);
}

StructureAlgebra direct_sum(const StructureAlgebra& a, const StructureAlgebra& b) {
  StructureAlgebra s;
  s.dim = a.dim + b.dim;
  s.constants.assign(s.dim * s.dim, vec_zero(s.dim));
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j)
      for (std::size_t k = 0; k < a.dim; ++k)
        s.constants[i * s.dim + j][k] = a.product_coords(i, j)[k];
  for (std::size_t i = 0; i < b.dim; ++i)
    for (std::size_t j = 0; j < b.dim; ++j)
      for (std::size_t k = 0; k < b.dim; ++k)
        s.constants[(a.dim + i) * s.dim + (a.dim + j)][a.dim + k] = b.product_coords(i, j)[k];
  s.unit = vec_zero(s.dim);
  for (std::size_t k = 0; k < a.dim; ++k) s.unit[k] = a.unit[k];
  for (std::size_t k = 0; k < b.dim; ++k) s.unit[a.dim + k] = b.unit[k];
  return s;
}

StructureAlgebra matrix_algebra_over_field(const StructureAlgebra& k_field, unsigned m) {
  const std::size_t d = k_field.dim;
  StructureAlgebra a;
  a.dim = static_cast<std::size_t>(m) * m * d;
  a.constants.assign(a.dim * a.dim, vec_zero(a.dim));
  auto idx = [m, d](std::size_t i, std::size_t j, std::size_t al) {
    return (i * m + j) * d + al;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t al = 0; al < d; ++al)
        for (std::size_t k = 0; k < m; ++k)
          for (std::size_t l = 0; l < m; ++l)
            for (std::size_t be = 0; be < d; ++be) {
              if (j != k) continue;
              // (kappa_al e_ij)(kappa_be e_kl) = (kappa_al kappa_be) e_il
              const QVector& prod = k_field.product_coords(al, be);
              for (std::size_t ga = 0; ga < d; ++ga)
                a.constants[idx(i, j, al) * a.dim + idx(k, l, be)][idx(i, l, ga)] = prod[ga];
            }
  a.unit = vec_zero(a.dim);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t al = 0; al < d; ++al) a.unit[idx(i, i, al)] = k_field.unit[al];
  return a;
}

ConjugatedAlgebra conjugate_algebra(const StructureAlgebra& a, std::uint64_t seed) {
  SplitMix64 rng{seed};
  const std::size_t n = a.dim;
  QMatrix t;
  std::optional<QMatrix> t_inv;
  do {
    t = QMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t.at(i, j) = Rat(rng.range(-2, 2));
    t_inv = inverse(t);
  } while (!t_inv);
  // New basis b'_j = sum_i T_ij b_i; products re-expressed through T^{-1}.
  ConjugatedAlgebra out;
  out.transform = t;
  out.algebra.dim = n;
  out.algebra.constants.assign(n * n, vec_zero(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      AlgebraElement prod = a.mul(t.col(i), t.col(j));
      out.algebra.constants[i * n + j] = t_inv->apply(prod);
    }
  out.algebra.unit = t_inv->apply(a.unit);
  return out;
}

AlgebraElement random_element(const StructureAlgebra& a, SplitMix64& rng, long lo, long hi) {
  AlgebraElement x(a.dim);
  for (std::size_t i = 0; i < a.dim; ++i) x[i] = Rat(rng.range(lo, hi));
  return x;
}

TateRepModel standard_matrix_model(const StructureAlgebra& k_field, unsigned m,
                                   unsigned copies) {
  StructureAlgebra alg = matrix_algebra_over_field(k_field, m);
  const std::size_t d = k_field.dim;
  std::size_t per_copy = static_cast<std::size_t>(m) * d;
  std::size_t dim_v = per_copy * copies;
  if (dim_v % 2 != 0)
    throw std::invalid_argument("standard_matrix_model: module dimension must be even");
  TateRepModel model;
  model.algebra = alg;
  model.g = static_cast<unsigned>(dim_v / 2);
  // Standard module: columns K^m with basis kappa_be at slot k; the element
  // kappa_al e_ij sends slot (k = j, be) to slot (i, al*be coords).
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t al = 0; al < d; ++al) {
        QMatrix rho(dim_v, dim_v);
        for (unsigned copy = 0; copy < copies; ++copy)
          for (std::size_t be = 0; be < d; ++be) {
            const QVector& prod = k_field.product_coords(al, be);
            for (std::size_t ga = 0; ga < d; ++ga)
              rho.at(copy * per_copy + i * d + ga, copy * per_copy + j * d + be) = prod[ga];
          }
        model.rho.push_back(std::move(rho));
      }
  return model;
}

TateRepModel left_regular_model(const StructureAlgebra& a) {
  if (a.dim % 2 != 0)
    throw std::invalid_argument("left_regular_model: dim must be even");
  TateRepModel model;
  model.algebra = a;
  model.g = static_cast<unsigned>(a.dim / 2);
  for (std::size_t i = 0; i < a.dim; ++i)
    model.rho.push_back(a.left_regular(vec_unit(a.dim, i)));
  return model;
}

TateRepModel model_direct_sum(const TateRepModel& a, const TateRepModel& b) {
  TateRepModel model;
  model.algebra = direct_sum(a.algebra, b.algebra);
  model.g = a.g + b.g;
  std::size_t dim_v = 2ul * model.g;
  for (std::size_t i = 0; i < a.algebra.dim; ++i) {
    QMatrix rho(dim_v, dim_v);
    for (std::size_t r = 0; r < 2ul * a.g; ++r)
      for (std::size_t c = 0; c < 2ul * a.g; ++c) rho.at(r, c) = a.rho[i].at(r, c);
    model.rho.push_back(std::move(rho));
  }
  for (std::size_t i = 0; i < b.algebra.dim; ++i) {
    QMatrix rho(dim_v, dim_v);
    for (std::size_t r = 0; r < 2ul * b.g; ++r)
      for (std::size_t c = 0; c < 2ul * b.g; ++c)
        rho.at(2ul * a.g + r, 2ul * a.g + c) = b.rho[i].at(r, c);
    model.rho.push_back(std::move(rho));
  }
  return model;
}

}  // namespace endosplit
