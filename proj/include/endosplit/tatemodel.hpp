#pragma once

#include <string>
#include <vector>

#include "endosplit/splittable.hpp"

namespace endosplit {

// Representation of an algebra on a 2g-dimensional rational space: the
// single rational model of the action on every ell-adic Tate module.
struct TateRepModel {
  StructureAlgebra algebra;
  unsigned g = 0;
  std::vector<QMatrix> rho;  // per basis element, size 2g

  QMatrix rho_of(const AlgebraElement& u) const;
  // Empty on success; otherwise the first failed homomorphism/injectivity check.
  std::optional<std::string> validate() const;
};

struct TateMatrix {
  QMatrix matrix;   // size 2g
  QPoly charpoly;   // monic, degree 2g, equals charpoly(matrix)
};

// Copies of the standard module per certificate factor; the invariant
// sum_i copies_i * m_i * d_i = 2g is checked where the plan is consumed.
struct MultiplicityPlan {
  std::vector<unsigned> copies;
};

// Matrix of w -> u w on a certified field in its distinguished basis.
QMatrix regular_matrix(const StructureAlgebra& k_field, const AlgebraElement& u);

// Block diagonal with 2g/d copies of regular_matrix(u); requires d | 2g.
TateMatrix tate_matrix_field(const StructureAlgebra& k_field, unsigned g,
                             const AlgebraElement& u);

// Block matrix (M(u_ij)) for u in Mat_m(K); each copy of the underlying
// space contributes 2g/m, which d must divide.
TateMatrix tate_matrix_matrixalg(const StructureAlgebra& k_field, unsigned m, unsigned g,
                                 const std::vector<AlgebraElement>& u_table);

// Block-diagonal assembly over certificate factors, factor i repeated
// plan.copies[i] times; u must lie in C.
TateMatrix tate_matrix_semisimple(const SplittableCertificate& cert,
                                  const MultiplicityPlan& plan, const AlgebraElement& u);

// With claim set: matrix has integer entries and charpoly lies in Z[t].
// Without: the Weil implication (integral matrix => integral charpoly).
bool weil_integrality_check(const TateMatrix& t, bool integral_claim);

struct CheckLine {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct VerifierReport {
  bool ok = true;
  std::vector<CheckLine> lines;
  void add(const std::string& name, bool line_ok, const std::string& detail = "");
};

// Splits the representation along complete orthogonal central idempotents:
// builds S and P, checks S P = N Id = P S and conjugated block-diagonality
// for every basis element.
VerifierReport split_representation(const TateRepModel& model,
                                    const std::vector<AlgebraElement>& idempotents, long N);

// rho(N s) maps im rho(N u1) onto im rho(N u2) bijectively, for conjugate
// u2 = s u1 s^{-1}. Throws std::invalid_argument on precondition violations.
bool conj_isogeny_check(const TateRepModel& model, const AlgebraElement& u1,
                        const AlgebraElement& u2, const AlgebraElement& s, long N);

// For a model of Mat_m(K) built by matrix_algebra_over_field: constructs
// psi from Z_1 = im rho(N e_11) and the transposition maps, then checks
// rho(u) = psi Mat_m(kappa)(u) psi^{-1} for every basis element.
VerifierReport matrixE_model(const TateRepModel& model, const StructureAlgebra& k_field,
                             unsigned m);

// Smallest positive N clearing the denominators of every rho basis image.
long default_denominator_clearer(const TateRepModel& model);

}  // namespace endosplit
