#pragma once

// Command-line front end. Exit codes: 0 success, 1 invalid input or a
// failed validation, 2 a reproduced scenario outside its tolerances.

#include <iosfwd>

namespace lidarscan {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitMismatch = 2;

/// Runs one subcommand. Data goes to `out` unless an output path is set;
/// reports and diagnostics go to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lidarscan
