#pragma once

#include <vector>

#include "endosplit/algebra.hpp"

namespace endosplit {

struct JordanPair {
  AlgebraElement semisimple_part;
  AlgebraElement nilpotent_part;
  QPoly witness_poly;  // witness_poly(f) == semisimple_part
};

// (e, h, y) with [h,e] = 2e, [h,y] = -2y, [e,y] = h, brackets xy - yx.
struct Sl2Triple {
  AlgebraElement e, h, y;
};

struct IsotypicBlock {
  unsigned highest_weight = 0;
  unsigned multiplicity = 0;
  // module_dim x ((highest_weight+1) * multiplicity); strand s occupies the
  // contiguous columns [s*(n+1), (s+1)*(n+1)) as v, y v, ..., y^n v.
  QMatrix adapted_basis;
};

struct Sl2ModuleDecomposition {
  std::size_t module_dim = 0;
  std::vector<IsotypicBlock> blocks;  // descending highest weight
};

// Tr_{A/k}(left multiplication by x) / m as an element of k (coordinates in
// k's sub-basis). Requires a simple with center exactly k and dim over k a
// perfect square m^2.
AlgebraElement reduced_trace(const StructureAlgebra& a, const BaseFieldTag& k,
                             const AlgebraElement& x);

// f minus the central correction (reduced_trace(f)/m) * 1; has reduced trace 0.
AlgebraElement project_to_sl(const StructureAlgebra& a, const BaseFieldTag& k,
                             const AlgebraElement& f);

// f = s + n with commuting semisimple s and nilpotent n, both polynomials
// in f; Newton iteration in Q[t]/(minpoly) on the squarefree part.
JordanPair jordan_chevalley(const StructureAlgebra& a, const AlgebraElement& f);

// Completes a nonzero nilpotent trace-zero e to an sl2 triple: first
// h in image(ad e) with [h,e] = 2e, then y. Throws std::invalid_argument on
// bad e, infeasible_error when a guaranteed-solvable system is not.
Sl2Triple jacobson_morozov(const StructureAlgebra& a, const BaseFieldTag& k,
                           const AlgebraElement& e);

// Isotypic decomposition of the module defined by the three operators;
// throws std::invalid_argument if the bracket relations fail.
Sl2ModuleDecomposition sl2_decompose(const QMatrix& action_e, const QMatrix& action_h,
                                     const QMatrix& action_y);

struct MatrixUnitBlock {
  unsigned highest_weight = 0;
  // (n+1) x (n+1) table row-major: units[j*(n+1)+l] realizes E_jl, as an
  // element of the ambient algebra lying inside c.
  std::vector<AlgebraElement> units;
};

// Matrix-unit tables for the unital subalgebra c generated by the triple
// acting on the parent's regular module with decomposition d.
std::vector<MatrixUnitBlock> matrix_units_from_sl2(const StructureAlgebra& a,
                                                   const Subalgebra& c,
                                                   const Sl2ModuleDecomposition& d);

// Joint commutant of a set of operators, as a subalgebra of the full matrix
// algebra on the module.
Subalgebra commutant(const std::vector<QMatrix>& action);

// Mat_n(Q) with basis E_11, E_12, ..., E_nn (row-major).
StructureAlgebra matrix_algebra(std::size_t n);

}  // namespace endosplit
