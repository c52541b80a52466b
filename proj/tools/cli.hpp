#ifndef ASCOUNT_TOOLS_CLI_HPP_
#define ASCOUNT_TOOLS_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>

#include "ascount/gf.hpp"

namespace ascount::cli {

enum ExitCode { kOk = 0, kInvariantFailure = 1, kUsage = 2 };

struct CliConfig {
  std::string subcommand;
  std::string scope;  // local | global
  int p = 2, n = 1, r = 1;
  int exponent = -1, degree = -1, max = -1, fit_max = -1;
  std::string divisor;
  std::string format = "json";
  std::string output;  // empty for standard output
  std::string suite = "all";
  double budget = 300;
  int workers = 0;
  std::uint64_t seed = 1;
  bool local = false;
};

// comma list of poly^e or inf^e; commas inside brackets belong to coefficients
Divisor parse_divisor(const PrimeContext& ctx, const std::string& text);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ascount::cli

#endif
