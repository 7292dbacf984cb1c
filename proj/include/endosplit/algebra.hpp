#pragma once

#include <optional>
#include <string>
#include <vector>

#include "endosplit/linalg.hpp"
#include "endosplit/matrix.hpp"
#include "endosplit/poly.hpp"

namespace endosplit {

// Finite-dimensional unital algebra over Q presented by structure constants:
// constants[i*dim + j] holds the coordinates of b_i * b_j in the basis b.
struct StructureAlgebra {
  std::size_t dim = 0;
  std::vector<QVector> constants;
  QVector unit;

  const QVector& product_coords(std::size_t i, std::size_t j) const {
    return constants[i * dim + j];
  }

  AlgebraElement mul(const AlgebraElement& x, const AlgebraElement& y) const;
  QMatrix left_regular(const AlgebraElement& x) const;   // z -> x z
  QMatrix right_regular(const AlgebraElement& x) const;  // z -> z x
  AlgebraElement eval_poly(const QPoly& p, const AlgebraElement& x) const;
  AlgebraElement scalar(const Rat& c) const { return vec_scale(c, unit); }

  bool is_commutative() const;
  // Empty on success; otherwise a description naming the first failing triple.
  std::optional<std::string> check() const;
};

QPoly minpoly_element(const StructureAlgebra& a, const AlgebraElement& x);

// Multiplication-closed subspace of a parent algebra. The basis is stored in
// parent coordinates and re-echelonized to the canonical reduced form, so
// equality of subalgebras is plain matrix comparison. unit_in_parent is
// absent for non-unital ideals (the radical).
struct Subalgebra {
  StructureAlgebra parent;
  QMatrix basis;  // parent_dim x sub_dim, columns = basis elements
  StructureAlgebra induced;
  std::optional<AlgebraElement> unit_in_parent;

  std::size_t dim() const { return basis.cols(); }
  AlgebraElement to_parent(const AlgebraElement& sub_coords) const;
  std::optional<AlgebraElement> to_sub(const AlgebraElement& parent_coords) const;
  bool contains(const AlgebraElement& parent_coords) const;
  bool same_space(const Subalgebra& other) const { return basis == other.basis; }
};

// Builds a subalgebra from a spanning set that is already closed under
// multiplication; throws std::invalid_argument otherwise.
Subalgebra make_subalgebra(const StructureAlgebra& a, const std::vector<AlgebraElement>& span);

// Smallest multiplication-closed subspace containing gens (plus 1 on request).
Subalgebra subalgebra_generated(const StructureAlgebra& a,
                                const std::vector<AlgebraElement>& gens, bool include_unit);

// {x : x g = g x for all g in s}, a unital subalgebra.
Subalgebra centralizer(const StructureAlgebra& a, const std::vector<AlgebraElement>& s);

Subalgebra center(const StructureAlgebra& a);

// Kernel of the regular trace form (Dickson, characteristic 0); zero iff
// the algebra is semisimple. Non-unital in general.
Subalgebra radical(const StructureAlgebra& a);

bool is_semisimple(const StructureAlgebra& a);

// Complete set of primitive pairwise-orthogonal central idempotents.
// Requires radical(a) = 0; throws std::invalid_argument otherwise.
std::vector<AlgebraElement> central_idempotents(const StructureAlgebra& a);

// The ideals e_i a with unit e_i, induced structure constants.
std::vector<Subalgebra> simple_factors(const StructureAlgebra& a);

struct BaseFieldTag {
  Subalgebra subalgebra;
  bool is_field_certified = false;
};

// Certified iff k is commutative with zero radical and exactly one
// central idempotent. Throws on non-commutative input.
BaseFieldTag field_certify(const Subalgebra& k);

}  // namespace endosplit
