#pragma once

#include <iosfwd>

namespace halfelastica::cli {

enum ExitCode : int {
  kOk = 0,
  kNotInModuli = 2,
  kQOutOfRange = 3,
  kUsage = 64,
  kNumericDomain = 65,
};

// Parses argv and runs one subcommand. Files go to --out when given,
// otherwise to out; diagnostics go to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace halfelastica::cli
