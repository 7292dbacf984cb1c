#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "endosplit/tatemodel.hpp"

namespace endosplit {

// Deterministic 64-bit generator used everywhere a seed appears.
struct SplitMix64 {
  std::uint64_t state = 0;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform-ish integer in [lo, hi].
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

// Names of all groups of order <= 12 recognized by group_algebra().
const std::vector<std::string>& small_group_names();

// Multiplication table of a named small group; element 0 is the identity.
std::vector<std::vector<std::size_t>> group_table(const std::string& name);

StructureAlgebra group_algebra(const std::string& name);

// (a, b / Q): basis {1, i, j, k}, i^2 = a, j^2 = b, ij = k = -ji.
StructureAlgebra quaternion_algebra(long a, long b);

// Q[t]/(mu) for monic integral mu, power basis.
StructureAlgebra field_algebra(const QPoly& mu);

// Named presentations: "gauss" t^2+1, "sqrt2" t^2-2, "zeta5" t^4+t^3+t^2+t+1.
StructureAlgebra named_field(const std::string& name);

StructureAlgebra direct_sum(const StructureAlgebra& a, const StructureAlgebra& b);

// Mat_m(K) with basis kappa_alpha e_ij at index (i*m + j)*d + alpha.
StructureAlgebra matrix_algebra_over_field(const StructureAlgebra& k_field, unsigned m);

struct ConjugatedAlgebra {
  StructureAlgebra algebra;
  QMatrix transform;  // invertible change of basis used
};

// Change of basis by an invertible matrix with small entries drawn from the
// seeded generator. The result is isomorphic to the input.
ConjugatedAlgebra conjugate_algebra(const StructureAlgebra& a, std::uint64_t seed);

AlgebraElement random_element(const StructureAlgebra& a, SplitMix64& rng, long lo = -3,
                              long hi = 3);

// Tate model helpers -------------------------------------------------------

// Mat_m(K) acting on `copies` copies of the standard module K^m.
TateRepModel standard_matrix_model(const StructureAlgebra& k_field, unsigned m,
                                   unsigned copies);

// Left regular model: the algebra acting on itself; dim must be even.
TateRepModel left_regular_model(const StructureAlgebra& a);

// Direct sum of models: block-diagonal rho on the direct-sum algebra.
TateRepModel model_direct_sum(const TateRepModel& a, const TateRepModel& b);

}  // namespace endosplit
