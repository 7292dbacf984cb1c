#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "endosplit/json_io.hpp"

namespace endosplit {

// Exit codes: 0 success/verified, 1 verification failure, 2 input error,
// 3 internal infeasibility (a theorem-guaranteed system was unsolvable).
enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitInputError = 2,
  kExitInfeasible = 3,
};

struct CliOptions {
  std::uint64_t seed = 0;
  std::string output = "json";  // json | text
  int parallel = 1;
  std::size_t max_dim = 64;
  std::string out_path;  // optional report destination
};

// Associativity, unit and semisimplicity diagnostics for an algebra file.
int cmd_check(const std::string& path, const CliOptions& opts, std::ostream& out,
              std::ostream& err);

// Runs the main construction on a named element and emits the certificate.
int cmd_split(const std::string& path, const std::string& element_name, const CliOptions& opts,
              std::ostream& out, std::ostream& err);

// Emits M(u) and its characteristic polynomial for the given g and plan
// (comma-separated copies per certificate factor; empty = single-factor default).
int cmd_tate(const std::string& path, const std::string& element_name, unsigned g,
             const std::string& plan, const CliOptions& opts, std::ostream& out,
             std::ostream& err);

// Corpus generator; kind in {matrix, group, quaternion, field, sum}, params
// are kind-specific ("n=2", "name=S3", "a=-1 b=-1", "of=matrix:2,group:S3").
int cmd_gen(const std::string& kind, const std::vector<std::string>& params,
            const CliOptions& opts, std::ostream& out, std::ostream& err);

// Re-checks a certificate file against an algebra file.
int cmd_verify(const std::string& cert_path, const std::string& algebra_path,
               const CliOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace endosplit
