#include "endosplit/cli.hpp"

#include <chrono>
#include <ostream>
#include <sstream>

#include "endosplit/generators.hpp"

namespace endosplit {

namespace {

void emit(const Json& report, const CliOptions& opts, std::ostream& out) {
  std::string text = report.dump(2) + "\n";
  if (!opts.out_path.empty())
    write_file(opts.out_path, text);
  else
    out << text;
}

Json base_report(const std::string& command, const std::string& digest,
                 const CliOptions& opts) {
  Json j;
  j["command"] = command;
  j["input_digest"] = digest;
  j["seed"] = std::to_string(opts.seed);
  return j;
}

AlgebraDocument load_checked(const std::string& path, const CliOptions& opts) {
  AlgebraDocument doc = parse_document(read_file(path));
  if (doc.algebra.dim > opts.max_dim) {
    std::ostringstream os;
    os << "input dimension " << doc.algebra.dim << " exceeds --max-dim " << opts.max_dim;
    throw std::invalid_argument(os.str());
  }
  if (auto bad = doc.algebra.check())
    throw std::invalid_argument("algebra check failed: " + *bad);
  return doc;
}

std::string param_value(const std::vector<std::string>& params, const std::string& key) {
  for (const std::string& p : params) {
    auto eq = p.find('=');
    if (eq != std::string::npos && p.substr(0, eq) == key) return p.substr(eq + 1);
  }
  return "";
}

StructureAlgebra gen_simple(const std::string& spec) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "matrix") return matrix_algebra(std::stoul(rest));
  if (kind == "group") return group_algebra(rest);
  if (kind == "field") return named_field(rest);
  if (kind == "quaternion") {
    auto colon2 = rest.find(':');
    if (colon2 == std::string::npos)
      throw std::invalid_argument("quaternion spec needs a:b");
    return quaternion_algebra(std::stol(rest.substr(0, colon2)),
                              std::stol(rest.substr(colon2 + 1)));
  }
  throw std::invalid_argument("unknown generator spec: " + spec);
}

}  // namespace

int cmd_check(const std::string& path, const CliOptions& opts, std::ostream& out,
              std::ostream& err) {
  try {
    AlgebraDocument doc = parse_document(read_file(path));
    if (doc.algebra.dim > opts.max_dim) {
      err << "error: input dimension exceeds --max-dim\n";
      return kExitInputError;
    }
    Json report = base_report("check", document_digest(doc), opts);
    Json verdicts;
    auto bad = doc.algebra.check();
    verdicts["shape_unit_associativity"] = bad ? Json(*bad) : Json("ok");
    bool structure_ok = !bad.has_value();
    bool semisimple = false;
    if (structure_ok) {
      Subalgebra rad = radical(doc.algebra);
      semisimple = rad.dim() == 0;
      verdicts["semisimple"] = semisimple;
      verdicts["radical_dim"] = rad.dim();
    }
    if (structure_ok && doc.rep) {
      auto rep_bad = doc.rep->validate();
      verdicts["rep"] = rep_bad ? Json(*rep_bad) : Json("ok");
      structure_ok = structure_ok && !rep_bad.has_value();
    }
    report["verdicts"] = verdicts;
    emit(report, opts, out);
    return structure_ok ? kExitOk : kExitVerifyFailed;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

int cmd_split(const std::string& path, const std::string& element_name, const CliOptions& opts,
              std::ostream& out, std::ostream& err) {
  AlgebraDocument doc;
  AlgebraElement f;
  try {
    doc = load_checked(path, opts);
    auto it = doc.elements.find(element_name);
    if (it == doc.elements.end())
      throw std::invalid_argument("unknown element: " + element_name);
    f = it->second;
    if (!is_semisimple(doc.algebra))
      throw std::invalid_argument("algebra is not semisimple");
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  try {
    auto t0 = std::chrono::steady_clock::now();
    SplitOptions sopts;
    sopts.parallel = opts.parallel > 1;
    SplitStats stats;
    SplittableCertificate cert = splittable_subalgebra(doc.algebra, f, sopts, &stats);
    VerifyReport verify = verify_certificate(cert, f);
    Json report = base_report("split", document_digest(doc), opts);
    report["verdicts"] = Json{{"certificate_verified", verify.ok}};
    if (!verify.ok) report["verdicts"]["first_failure"] = verify.first_failure;
    report["outputs"] =
        Json{{"certificate", certificate_to_json(cert, document_digest(doc), element_name)}};
    Json step6 = Json::array();
    for (const auto& rec : stats.step6) {
      Json jr;
      jr["module_dim"] = rec.module_dim;
      Json blocks = Json::array();
      for (auto [n, mult] : rec.blocks) blocks.push_back(Json{{"weight", n}, {"mult", mult}});
      jr["blocks"] = blocks;
      Json weights = Json::array();
      for (auto [w, dim] : rec.weight_dims)
        weights.push_back(Json{{"weight", w}, {"dim", dim}});
      jr["weight_dims"] = weights;
      step6.push_back(jr);
    }
    report["outputs"]["sl2_invocations"] = step6;
    emit(report, opts, out);
    // Timing goes to the log stream only; reports stay byte-identical.
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    err << "# split timing_ms " << ms << "\n";
    return verify.ok ? kExitOk : kExitVerifyFailed;
  } catch (const infeasible_error& e) {
    err << "internal infeasibility: " << e.what() << "\n";
    return kExitInfeasible;
  }
}

int cmd_tate(const std::string& path, const std::string& element_name, unsigned g,
             const std::string& plan_str, const CliOptions& opts, std::ostream& out,
             std::ostream& err) {
  AlgebraDocument doc;
  AlgebraElement f;
  try {
    doc = load_checked(path, opts);
    auto it = doc.elements.find(element_name);
    if (it == doc.elements.end())
      throw std::invalid_argument("unknown element: " + element_name);
    f = it->second;
    if (!is_semisimple(doc.algebra))
      throw std::invalid_argument("algebra is not semisimple");
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  try {
    SplittableCertificate cert = splittable_subalgebra(doc.algebra, f);
    MultiplicityPlan plan;
    if (plan_str.empty()) {
      if (cert.factors.size() != 1)
        throw std::invalid_argument("--plan required for multi-factor certificates");
      unsigned long md =
          static_cast<unsigned long>(cert.factors[0].size) * cert.factors[0].field_dim();
      if ((2ul * g) % md != 0)
        throw std::invalid_argument("factor block size does not divide 2g");
      plan.copies = {static_cast<unsigned>((2ul * g) / md)};
    } else {
      std::stringstream ss(plan_str);
      std::string tok;
      while (std::getline(ss, tok, ',')) plan.copies.push_back(std::stoul(tok));
    }
    unsigned long total = 0;
    for (std::size_t i = 0; i < plan.copies.size() && i < cert.factors.size(); ++i)
      total += static_cast<unsigned long>(plan.copies[i]) * cert.factors[i].size *
               cert.factors[i].field_dim();
    if (plan.copies.size() != cert.factors.size() || total != 2ul * g)
      throw std::invalid_argument("plan inconsistent with g: copies*m*d must sum to 2g");

    TateMatrix tm = tate_matrix_semisimple(cert, plan, f);
    bool weil = weil_integrality_check(tm, tm.matrix.is_integral());
    Json report = base_report("tate", document_digest(doc), opts);
    report["verdicts"] = Json{{"weil_integrality", weil}};
    if (opts.output == "text") {
      std::ostringstream os;
      os << "M(u) =\n" << tm.matrix.to_string();
      os << "P_u(t) = " << tm.charpoly.to_string() << "\n";
      os << "weil_integrality: " << (weil ? "pass" : "fail") << "\n";
      if (!opts.out_path.empty())
        write_file(opts.out_path, os.str());
      else
        out << os.str();
    } else {
      report["outputs"] = Json{{"matrix", matrix_to_json(tm.matrix)},
                               {"charpoly", rat_vector_to_json(tm.charpoly.coeffs())}};
      emit(report, opts, out);
    }
    return kExitOk;
  } catch (const infeasible_error& e) {
    err << "internal infeasibility: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

int cmd_gen(const std::string& kind, const std::vector<std::string>& params,
            const CliOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    AlgebraDocument doc;
    if (kind == "matrix") {
      std::string n = param_value(params, "n");
      if (n.empty()) throw std::invalid_argument("matrix generator needs n=<size>");
      doc.algebra = matrix_algebra(std::stoul(n));
      std::string copies = param_value(params, "rep_copies");
      if (!copies.empty())
        doc.rep = standard_matrix_model(named_field("rational"), std::stoul(n),
                                        std::stoul(copies));
    } else if (kind == "group") {
      std::string name = param_value(params, "name");
      if (name.empty()) throw std::invalid_argument("group generator needs name=<group>");
      doc.algebra = group_algebra(name);
    } else if (kind == "quaternion") {
      std::string a = param_value(params, "a"), b = param_value(params, "b");
      if (a.empty() || b.empty())
        throw std::invalid_argument("quaternion generator needs a=<int> b=<int>");
      doc.algebra = quaternion_algebra(std::stol(a), std::stol(b));
    } else if (kind == "field") {
      std::string name = param_value(params, "name");
      if (name.empty()) throw std::invalid_argument("field generator needs name=<field>");
      doc.algebra = named_field(name);
    } else if (kind == "sum") {
      std::string of = param_value(params, "of");
      if (of.empty()) throw std::invalid_argument("sum generator needs of=<spec,spec,...>");
      std::stringstream ss(of);
      std::string tok;
      std::vector<StructureAlgebra> parts;
      while (std::getline(ss, tok, ',')) parts.push_back(gen_simple(tok));
      if (parts.empty()) throw std::invalid_argument("sum generator: empty list");
      doc.algebra = parts.front();
      for (std::size_t i = 1; i < parts.size(); ++i)
        doc.algebra = direct_sum(doc.algebra, parts[i]);
    } else {
      throw std::invalid_argument("unknown generator kind: " + kind);
    }
    if (!param_value(params, "conjugate").empty()) {
      doc.rep.reset();  // representation matrices are basis-bound
      doc.algebra = conjugate_algebra(doc.algebra, opts.seed).algebra;
    }
    if (doc.algebra.dim > opts.max_dim)
      throw std::invalid_argument("generated dimension exceeds --max-dim");
    // Deterministic sample elements for downstream commands.
    SplitMix64 rng{opts.seed};
    doc.elements["f"] = random_element(doc.algebra, rng);
    doc.elements["g"] = random_element(doc.algebra, rng);
    if (auto bad = doc.algebra.check())
      throw std::logic_error("generated algebra failed self-check: " + *bad);
    std::string text = document_to_json(doc).dump(2) + "\n";
    if (!opts.out_path.empty())
      write_file(opts.out_path, text);
    else
      out << text;
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

int cmd_verify(const std::string& cert_path, const std::string& algebra_path,
               const CliOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    AlgebraDocument doc = load_checked(algebra_path, opts);
    Json jc;
    try {
      jc = Json::parse(read_file(cert_path));
    } catch (const std::exception& e) {
      throw std::invalid_argument(std::string("malformed certificate JSON: ") + e.what());
    }
    auto [cert, digest] = certificate_from_json(jc, doc.algebra);
    if (digest != document_digest(doc)) {
      err << "error: certificate was issued for a different algebra (digest mismatch)\n";
      return kExitInputError;
    }
    std::string element_name = jc.value("element_name", "f");
    auto it = doc.elements.find(element_name);
    if (it == doc.elements.end())
      throw std::invalid_argument("algebra file lacks element: " + element_name);
    VerifyReport rep = verify_certificate(cert, it->second);
    Json report = base_report("verify", document_digest(doc), opts);
    report["verdicts"] = Json{{"certificate_verified", rep.ok}};
    if (!rep.ok) report["verdicts"]["first_failure"] = rep.first_failure;
    emit(report, opts, out);
    return rep.ok ? kExitOk : kExitVerifyFailed;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace endosplit
