#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "endosplit/cli.hpp"

using namespace endosplit;

int main(int argc, char** argv) {
  CLI::App app{"endosplit: exact splittable-subalgebra certificates and Tate-module matrices"};
  app.require_subcommand(1);

  CliOptions opts;
  if (const char* env_seed = std::getenv("ENDOSPLIT_SEED")) {
    try {
      opts.seed = std::stoull(env_seed);
    } catch (...) {
      std::cerr << "warning: ignoring unparsable ENDOSPLIT_SEED\n";
    }
  }
  app.add_option("--seed", opts.seed, "deterministic seed (default: ENDOSPLIT_SEED or 0)");
  app.add_option("--output", opts.output, "report format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--parallel", opts.parallel, "factor-level parallelism")->check(CLI::Range(1, 64));
  app.add_option("--max-dim", opts.max_dim, "refuse inputs above this dimension");
  app.add_option("-o,--out", opts.out_path, "write the report to a file instead of stdout");

  std::string path, element = "f", cert_path, algebra_path, kind, plan;
  unsigned g = 1;
  std::vector<std::string> params;

  auto* check = app.add_subcommand("check", "associativity, unit and semisimplicity diagnostics");
  check->add_option("path", path, "algebra JSON file")->required();

  auto* split = app.add_subcommand("split", "construct and verify a splittable certificate");
  split->add_option("path", path, "algebra JSON file")->required();
  split->add_option("--element", element, "named element to split along (default f)");

  auto* tate = app.add_subcommand("tate", "emit M(u) and its characteristic polynomial");
  tate->add_option("path", path, "algebra JSON file")->required();
  tate->add_option("--element", element, "named element u (default f)");
  tate->add_option("--g", g, "half the model dimension")->required();
  tate->add_option("--plan", plan, "copies per factor, comma-separated");

  auto* gen = app.add_subcommand("gen", "generate corpus algebras");
  gen->add_option("kind", kind, "matrix | group | quaternion | field | sum")->required();
  gen->add_option("params", params, "kind parameters, e.g. n=2, name=S3, a=-1 b=-1");

  auto* verify = app.add_subcommand("verify", "re-check a certificate file");
  verify->add_option("certificate", cert_path, "certificate JSON file")->required();
  verify->add_option("algebra", algebra_path, "algebra JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  if (check->parsed()) return cmd_check(path, opts, std::cout, std::cerr);
  if (split->parsed()) return cmd_split(path, element, opts, std::cout, std::cerr);
  if (tate->parsed()) return cmd_tate(path, element, g, plan, opts, std::cout, std::cerr);
  if (gen->parsed()) return cmd_gen(kind, params, opts, std::cout, std::cerr);
  if (verify->parsed()) return cmd_verify(cert_path, algebra_path, opts, std::cout, std::cerr);
  return kExitInputError;
}
