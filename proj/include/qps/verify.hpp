#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qps/pauli.hpp"

namespace qps {

struct CheckResult {
  std::string name;
  int n_max_run = 0;  // largest degree the check swept
  bool passed = true;
  std::string detail;  // first counterexample when failed
};

struct VerifyOptions {
  int n_max = 3;
  PhaseConvention convention{};
};

/// Runs every module invariant up to options.n_max (each check additionally
/// clamps to its own affordable degree).  Checks are ordered so that a
/// broken phase convention surfaces first as a displacement Hermiticity
/// counterexample.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

/// Prints one PASS/FAIL line per check plus a summary; returns the process
/// exit code (0 iff everything passed).
int print_report(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace qps
