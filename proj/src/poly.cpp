#include "endosplit/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace endosplit {

QPoly QPoly::from_ints(std::initializer_list<long> ascending) {
  QVector c;
  c.reserve(ascending.size());
  for (long v : ascending) c.emplace_back(v);
  return QPoly(std::move(c));
}

Rat QPoly::lc() const {
  if (c_.empty()) throw std::invalid_argument("QPoly::lc: zero polynomial");
  return c_.back();
}

QPoly QPoly::operator+(const QPoly& o) const {
  QVector r(std::max(c_.size(), o.c_.size()), Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return QPoly(std::move(r));
}

QPoly QPoly::operator-(const QPoly& o) const {
  QVector r(std::max(c_.size(), o.c_.size()), Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return QPoly(std::move(r));
}

QPoly QPoly::operator*(const QPoly& o) const {
  if (c_.empty() || o.c_.empty()) return QPoly();
  QVector r(c_.size() + o.c_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return QPoly(std::move(r));
}

QPoly QPoly::scaled(const Rat& c) const {
  QVector r(c_);
  for (Rat& x : r) x *= c;
  return QPoly(std::move(r));
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& divisor) const {
  if (divisor.is_zero()) throw std::invalid_argument("QPoly::divmod: zero divisor");
  QVector rem(c_);
  int dd = divisor.degree();
  int dr = static_cast<int>(rem.size()) - 1;
  if (dr < dd) return {QPoly(), *this};
  QVector quo(dr - dd + 1, Rat(0));
  Rat inv_lc = Rat(1) / divisor.lc();
  for (int k = dr - dd; k >= 0; --k) {
    Rat q = rem[k + dd] * inv_lc;
    if (q == 0) continue;
    quo[k] = q;
    for (int j = 0; j <= dd; ++j) rem[k + j] -= q * divisor.coeff(j);
  }
  return {QPoly(std::move(quo)), QPoly(std::move(rem))};
}

QPoly QPoly::derivative() const {
  if (c_.size() <= 1) return QPoly();
  QVector r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = Rat(static_cast<long>(i)) * c_[i];
  return QPoly(std::move(r));
}

QPoly QPoly::monic() const {
  if (is_zero()) throw std::invalid_argument("QPoly::monic: zero polynomial");
  return scaled(Rat(1) / lc());
}

Rat QPoly::eval(const Rat& t) const {
  Rat r(0);
  for (std::size_t i = c_.size(); i-- > 0;) r = r * t + c_[i];
  return r;
}

QMatrix QPoly::eval_matrix(const QMatrix& m) const {
  if (!m.is_square()) throw std::invalid_argument("eval_matrix: non-square");
  std::size_t n = m.rows();
  QMatrix r(n, n);
  for (std::size_t i = c_.size(); i-- > 0;) {
    r = r * m;
    for (std::size_t d = 0; d < n; ++d) r.at(d, d) += c_[i];
  }
  return r;
}

bool QPoly::is_integral() const {
  for (const Rat& x : c_)
    if (!rat_is_integer(x)) return false;
  return true;
}

std::string QPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    Rat c = c_[i];
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    } else if (c < 0) {
      os << "-";
      c = -c;
    }
    if (i == 0 || c != 1) os << rat_to_string(c);
    if (i > 0) {
      if (c != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

QPoly poly_gcd(const QPoly& a, const QPoly& b) {
  if (a.is_zero() && b.is_zero()) throw std::invalid_argument("poly_gcd: both inputs zero");
  QPoly r0 = a, r1 = b;
  while (!r1.is_zero()) {
    QPoly r2 = r0 % r1;
    if (!r2.is_zero()) r2 = r2.monic();  // keeps coefficient growth in check
    r0 = std::move(r1);
    r1 = std::move(r2);
  }
  return r0.monic();
}

QPoly poly_lcm(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return QPoly();
  QPoly g = poly_gcd(a, b);
  return (a * b).divmod(g).first.monic();
}

PolyXgcd poly_xgcd(const QPoly& a, const QPoly& b) {
  if (a.is_zero() && b.is_zero()) throw std::invalid_argument("poly_xgcd: both inputs zero");
  QPoly r0 = a, r1 = b;
  QPoly s0 = QPoly::constant(Rat(1)), s1;
  QPoly t0, t1 = QPoly::constant(Rat(1));
  while (!r1.is_zero()) {
    auto [q, r2] = r0.divmod(r1);
    QPoly s2 = s0 - q * s1;
    QPoly t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  Rat inv = Rat(1) / r0.lc();
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

QPoly squarefree_part(const QPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("squarefree_part: zero input");
  if (p.degree() == 0) return QPoly::constant(Rat(1));
  QPoly g = poly_gcd(p, p.derivative());
  return p.divmod(g).first.monic();
}

std::optional<QPoly> modinv_in_quotient(const QPoly& a, const QPoly& modulus) {
  if (modulus.is_zero() || modulus.degree() < 1)
    throw std::invalid_argument("modinv_in_quotient: modulus must have degree >= 1");
  QPoly ar = a % modulus;
  if (ar.is_zero()) return std::nullopt;
  PolyXgcd x = poly_xgcd(ar, modulus);
  if (x.g.degree() != 0) return std::nullopt;
  return x.s % modulus;
}

}  // namespace endosplit
