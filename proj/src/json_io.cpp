#include "endosplit/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace endosplit {

namespace {

void reject_floats(const Json& j) {
  if (j.is_number_float())
    throw std::invalid_argument("floating-point literal rejected (exact fractions only)");
  if (j.is_array() || j.is_object())
    for (const auto& item : j) reject_floats(item);
}

Rat rat_from_json(const Json& j) {
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) return Rat(static_cast<unsigned long>(j.get<std::uint64_t>()));
  throw std::invalid_argument("expected an exact fraction string or integer");
}

}  // namespace

Json rat_vector_to_json(const QVector& v) {
  Json a = Json::array();
  for (const Rat& x : v) a.push_back(rat_to_string(x));
  return a;
}

QVector rat_vector_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of fractions");
  QVector v;
  for (const auto& item : j) v.push_back(rat_from_json(item));
  return v;
}

Json matrix_to_json(const QMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(rat_vector_to_json(m.row(i)));
  return rows;
}

QMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of rows");
  std::vector<QVector> rows;
  for (const auto& row : j) rows.push_back(rat_vector_from_json(row));
  return QMatrix::from_rat_rows(rows);
}

Json document_to_json(const AlgebraDocument& doc) {
  Json j;
  j["schema_version"] = 1;
  j["kind"] = "algebra";
  j["dim"] = doc.algebra.dim;
  j["unit"] = rat_vector_to_json(doc.algebra.unit);
  Json constants = Json::array();
  for (std::size_t i = 0; i < doc.algebra.dim; ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < doc.algebra.dim; ++k)
      row.push_back(rat_vector_to_json(doc.algebra.product_coords(i, k)));
    constants.push_back(row);
  }
  j["constants"] = constants;
  if (!doc.elements.empty()) {
    Json elems;
    for (const auto& [name, coords] : doc.elements) elems[name] = rat_vector_to_json(coords);
    j["elements"] = elems;
  }
  if (doc.rep) {
    Json rep;
    rep["g"] = doc.rep->g;
    Json mats = Json::array();
    for (const QMatrix& m : doc.rep->rho) mats.push_back(matrix_to_json(m));
    rep["matrices"] = mats;
    j["rep"] = rep;
  }
  return j;
}

AlgebraDocument document_from_json(const Json& j) {
  reject_floats(j);
  if (!j.is_object()) throw std::invalid_argument("document: expected an object");
  if (!j.contains("dim") || !j.contains("constants") || !j.contains("unit"))
    throw std::invalid_argument("document: dim, unit and constants are required");
  AlgebraDocument doc;
  doc.algebra.dim = j.at("dim").get<std::size_t>();
  const std::size_t n = doc.algebra.dim;
  doc.algebra.unit = rat_vector_from_json(j.at("unit"));
  if (doc.algebra.unit.size() != n) throw std::invalid_argument("document: unit length != dim");
  const Json& constants = j.at("constants");
  if (!constants.is_array() || constants.size() != n)
    throw std::invalid_argument("document: constants must be a dim x dim table");
  doc.algebra.constants.assign(n * n, vec_zero(n));
  for (std::size_t i = 0; i < n; ++i) {
    const Json& row = constants.at(i);
    if (!row.is_array() || row.size() != n)
      throw std::invalid_argument("document: constants must be a dim x dim table");
    for (std::size_t k = 0; k < n; ++k) {
      QVector v = rat_vector_from_json(row.at(k));
      if (v.size() != n)
        throw std::invalid_argument("document: structure constant vector length != dim");
      doc.algebra.constants[i * n + k] = v;
    }
  }
  if (j.contains("elements")) {
    for (const auto& [name, coords] : j.at("elements").items()) {
      QVector v = rat_vector_from_json(coords);
      if (v.size() != n) throw std::invalid_argument("document: element length != dim");
      doc.elements[name] = v;
    }
  }
  if (j.contains("rep")) {
    TateRepModel model;
    model.algebra = doc.algebra;
    model.g = j.at("rep").at("g").get<unsigned>();
    for (const auto& m : j.at("rep").at("matrices")) model.rho.push_back(matrix_from_json(m));
    doc.rep = std::move(model);
  }
  return doc;
}

AlgebraDocument parse_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  return document_from_json(j);
}

Json certificate_to_json(const SplittableCertificate& cert, const std::string& algebra_digest,
                         const std::string& element_name) {
  Json j;
  j["schema_version"] = 1;
  j["kind"] = "certificate";
  j["algebra_digest"] = algebra_digest;
  j["element_name"] = element_name;
  j["dim_ambient"] = cert.ambient.dim;
  j["dim_c"] = cert.dim();
  Json basis = Json::array();
  for (std::size_t c = 0; c < cert.sub_basis.cols(); ++c)
    basis.push_back(rat_vector_to_json(cert.sub_basis.col(c)));
  j["sub_basis"] = basis;
  j["witness_unit"] = rat_vector_to_json(cert.witness_unit);
  j["witness_f"] = rat_vector_to_json(cert.witness_f);
  Json factors = Json::array();
  for (const CertFactor& f : cert.factors) {
    Json jf;
    jf["size"] = f.size;
    jf["field_dim"] = f.field_basis.cols();
    Json fb = Json::array();
    for (std::size_t c = 0; c < f.field_basis.cols(); ++c)
      fb.push_back(rat_vector_to_json(f.field_basis.col(c)));
    jf["field_basis"] = fb;
    Json units = Json::array();
    for (const AlgebraElement& u : f.units) units.push_back(rat_vector_to_json(u));
    jf["units"] = units;
    factors.push_back(jf);
  }
  j["factors"] = factors;
  return j;
}

std::pair<SplittableCertificate, std::string> certificate_from_json(
    const Json& j, const StructureAlgebra& ambient) {
  reject_floats(j);
  SplittableCertificate cert;
  cert.ambient = ambient;
  std::string digest = j.at("algebra_digest").get<std::string>();
  std::vector<QVector> basis;
  for (const auto& col : j.at("sub_basis")) basis.push_back(rat_vector_from_json(col));
  cert.sub_basis = basis.empty() ? QMatrix(ambient.dim, 0) : QMatrix::from_columns(basis);
  cert.witness_unit = rat_vector_from_json(j.at("witness_unit"));
  cert.witness_f = rat_vector_from_json(j.at("witness_f"));
  for (const auto& jf : j.at("factors")) {
    CertFactor f;
    f.size = jf.at("size").get<unsigned>();
    std::vector<QVector> fb;
    for (const auto& col : jf.at("field_basis")) fb.push_back(rat_vector_from_json(col));
    f.field_basis = QMatrix::from_columns(fb);
    for (const auto& u : jf.at("units")) f.units.push_back(rat_vector_from_json(u));
    cert.factors.push_back(std::move(f));
  }
  return {cert, digest};
}

Json verifier_report_to_json(const VerifierReport& rep) {
  Json j;
  j["ok"] = rep.ok;
  Json lines = Json::array();
  for (const CheckLine& line : rep.lines) {
    Json jl;
    jl["name"] = line.name;
    jl["ok"] = line.ok;
    if (!line.detail.empty()) jl["detail"] = line.detail;
    lines.push_back(jl);
  }
  j["checks"] = lines;
  return j;
}

std::string digest_string(const std::string& payload) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : payload) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex;
  for (int i = 15; i >= 0; --i) os << ((h >> (4 * i)) & 0xf);
  return os.str();
}

std::string document_digest(const AlgebraDocument& doc) {
  AlgebraDocument core;
  core.algebra = doc.algebra;  // digest covers the algebra only
  return digest_string(document_to_json(core).dump());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << contents;
}

}  // namespace endosplit
