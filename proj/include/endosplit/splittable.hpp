#pragma once

#include <string>
#include <vector>

#include "endosplit/decomp.hpp"

namespace endosplit {

// One matrix-algebra-over-a-number-field factor of a certificate. All
// element data is stored in ambient coordinates.
struct CertFactor {
  QMatrix field_basis;  // ambient_dim x field_dim, columns span K_i inside C
  unsigned size = 1;    // m_i
  // m x m table row-major; units[j*m + l] realizes E_jl.
  std::vector<AlgebraElement> units;

  unsigned field_dim() const { return static_cast<unsigned>(field_basis.cols()); }
};

// Explicit presentation of a subalgebra C of the ambient algebra as a direct
// sum of matrix algebras over number fields, with membership witnesses for
// 1 and f (coordinates relative to sub_basis).
struct SplittableCertificate {
  StructureAlgebra ambient;
  QMatrix sub_basis;  // ambient_dim x dim_C, columns = basis of C
  std::vector<CertFactor> factors;
  QVector witness_unit;
  QVector witness_f;

  std::size_t dim() const { return sub_basis.cols(); }
};

struct SplitOptions {
  bool parallel = false;  // fan out over the Step-1 simple factors
};

// Bookkeeping for the nilpotent branch, used by property tests.
struct SplitStats {
  struct Step6Record {
    std::size_t module_dim = 0;
    std::vector<std::pair<unsigned, unsigned>> blocks;  // (highest weight, multiplicity)
    // ker(h - w) dimensions measured on the module, weights -dim+1 .. dim-1.
    std::vector<std::pair<long, std::size_t>> weight_dims;
  };
  std::vector<Step6Record> step6;
  std::size_t recursion_depth = 0;
};

// The main construction: a subalgebra C containing 1 and f, isomorphic to a
// direct sum of matrix algebras over number fields, with certificate.
// Requires a nonzero and semisimple.
SplittableCertificate splittable_subalgebra(const StructureAlgebra& a, const AlgebraElement& f,
                                            const SplitOptions& options = {},
                                            SplitStats* stats = nullptr);

struct VerifyReport {
  bool ok = true;
  std::string first_failure;  // empty when ok
};

// Exact check of every certificate invariant; a false result names the
// first failed relation. Total: never throws on malformed certificates.
VerifyReport verify_certificate(const SplittableCertificate& cert, const AlgebraElement& f);

// Certificates living in complementary ideals of the same ambient algebra:
// concatenated factor lists, witnesses summed. Throws std::invalid_argument
// when the ideals are not orthogonal.
SplittableCertificate cert_direct_sum(const SplittableCertificate& c1,
                                      const SplittableCertificate& c2);

}  // namespace endosplit
