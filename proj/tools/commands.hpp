#pragma once

#include <ostream>

namespace specloc::cli {

/// Exit codes of the specloc command.
enum ExitCode : int {
  kVerdictTrue = 0,
  kVerdictFalse = 1,
  kInvalidInput = 2,
  kNoConvergence = 3,
  kSingularSystem = 4,
  kBadRegion = 5,
  kBaseCertificateFailed = 6,
  kKreinViolated = 7,
};

/// Parses argv, runs one subcommand and writes its JSON report to out.
/// Diagnostics go to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace specloc::cli
