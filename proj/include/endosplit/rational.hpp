#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace endosplit {

// Exact rational scalar. mpq_class keeps values canonical (reduced,
// positive denominator) as long as they are built through canonical
// constructors or arithmetic; make_rat() covers the raw num/den case.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline bool rat_is_integer(const Rat& q) { return q.get_den() == 1; }

// "p/q" in lowest terms, "p" when the denominator is 1.
inline std::string rat_to_string(const Rat& q) {
  if (rat_is_integer(q)) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Parses "p", "-p" or "p/q". Anything else (including floats) is rejected.
Rat rat_from_string(const std::string& s);

inline Int int_lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int int_gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// Exact division; throws if the division leaves a remainder.
inline Int int_divexact(const Int& a, const Int& b) {
  if (b == 0) throw std::invalid_argument("int_divexact: zero divisor");
  Int q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (r != 0) throw std::logic_error("int_divexact: inexact division");
  return q;
}

// Raised when a linear system the underlying theorems guarantee solvable
// turns out infeasible: corrupted input or an implementation bug.
class infeasible_error : public std::runtime_error {
 public:
  explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace endosplit
