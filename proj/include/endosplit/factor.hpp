#pragma once

#include <utility>
#include <vector>

#include "endosplit/poly.hpp"

namespace endosplit {

struct FactorPower {
  QPoly factor;           // monic irreducible over Q
  unsigned multiplicity;  // >= 1
};

struct Factorization {
  Rat unit;  // unit * prod factor^multiplicity == input, exactly
  std::vector<FactorPower> factors;
  QPoly reconstruct() const;
};

// Full irreducible factorization over Q: squarefree decomposition (Yun),
// then Zassenhaus per squarefree part (factor mod a small prime, linear
// Hensel lift to a Mignotte-derived bound, brute-force subset
// recombination). Throws on zero input.
Factorization factor_rational(const QPoly& p);

// Yun's algorithm on a monic polynomial: list of (monic squarefree part,
// multiplicity), pairwise coprime, product of powers reconstructs the input.
std::vector<std::pair<QPoly, unsigned>> squarefree_decomposition(const QPoly& monic);

bool is_irreducible(const QPoly& p);

}  // namespace endosplit
