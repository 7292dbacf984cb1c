#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "endosplit/matrix.hpp"
#include "endosplit/rational.hpp"

namespace endosplit {

// Univariate polynomial over Rat, coefficients in ascending degree order.
// Normalized: the zero polynomial has an empty coefficient vector and
// degree() == -1; otherwise the leading coefficient is nonzero.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(QVector coeffs) : c_(std::move(coeffs)) { trim(); }

  static QPoly zero() { return QPoly(); }
  static QPoly constant(const Rat& c) { return QPoly(QVector{c}); }
  static QPoly x() { return QPoly(QVector{Rat(0), Rat(1)}); }
  static QPoly from_ints(std::initializer_list<long> ascending);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rat coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rat(0); }
  const QVector& coeffs() const { return c_; }
  Rat lc() const;

  QPoly operator+(const QPoly& o) const;
  QPoly operator-(const QPoly& o) const;
  QPoly operator*(const QPoly& o) const;
  QPoly scaled(const Rat& c) const;
  bool operator==(const QPoly& o) const { return c_ == o.c_; }
  bool operator!=(const QPoly& o) const { return c_ != o.c_; }

  // Euclidean division; divisor must be nonzero.
  std::pair<QPoly, QPoly> divmod(const QPoly& divisor) const;
  QPoly operator%(const QPoly& o) const { return divmod(o).second; }

  QPoly derivative() const;
  QPoly monic() const;  // throws on zero
  Rat eval(const Rat& t) const;
  QMatrix eval_matrix(const QMatrix& m) const;  // matrix substitution, m square

  bool is_integral() const;  // all coefficients integers
  std::string to_string(const std::string& var = "t") const;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  QVector c_;
};

// Monic gcd; throws if both inputs are zero. gcd(p, 0) = monic(p).
QPoly poly_gcd(const QPoly& a, const QPoly& b);
QPoly poly_lcm(const QPoly& a, const QPoly& b);

struct PolyXgcd {
  QPoly g, s, t;  // g = s*a + t*b, g monic
};
PolyXgcd poly_xgcd(const QPoly& a, const QPoly& b);

// p / gcd(p, p'), monic. Throws on zero input.
QPoly squarefree_part(const QPoly& p);

// Inverse of a in Q[t]/(modulus); empty when gcd(a, modulus) != 1.
// Throws on zero modulus or modulus of degree < 1.
std::optional<QPoly> modinv_in_quotient(const QPoly& a, const QPoly& modulus);

}  // namespace endosplit
