#pragma once

#include <json.hpp>
#include <map>
#include <optional>
#include <string>

#include "endosplit/splittable.hpp"
#include "endosplit/tatemodel.hpp"

namespace endosplit {

using Json = nlohmann::ordered_json;

// Algebra file: dim, unit, structure constants as exact fraction strings,
// optional named elements and an optional representation block.
struct AlgebraDocument {
  StructureAlgebra algebra;
  std::map<std::string, AlgebraElement> elements;
  std::optional<TateRepModel> rep;
};

Json rat_vector_to_json(const QVector& v);
QVector rat_vector_from_json(const Json& j);
Json matrix_to_json(const QMatrix& m);  // array of rows
QMatrix matrix_from_json(const Json& j);

Json document_to_json(const AlgebraDocument& doc);
// Throws std::invalid_argument on malformed input; any floating-point
// literal anywhere in the tree is rejected.
AlgebraDocument document_from_json(const Json& j);
AlgebraDocument parse_document(const std::string& text);

Json certificate_to_json(const SplittableCertificate& cert, const std::string& algebra_digest,
                         const std::string& element_name);
// Returns the certificate plus the digest it was issued against.
std::pair<SplittableCertificate, std::string> certificate_from_json(
    const Json& j, const StructureAlgebra& ambient);

// Pass/fail per identity with the offending detail, as emitted by the
// representation verifiers.
Json verifier_report_to_json(const VerifierReport& rep);

// FNV-1a 64-bit over the canonical serialization, lowercase hex.
std::string digest_string(const std::string& payload);
std::string document_digest(const AlgebraDocument& doc);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace endosplit
