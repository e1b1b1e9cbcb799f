#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace diracgap {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitBoundFail = 2,  ///< only with --strict
  kExitSolverFailure = 3,
  kExitConfigError = 4,
};

/// Parses "0.5", "pi", "-pi/4", "2pi/3", "pi*0.25" into radians.
double parse_angle(const std::string& text);

/// 64-bit FNV-1a of a string, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

/// Runs one subcommand; args exclude the program name. Reports go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace diracgap
