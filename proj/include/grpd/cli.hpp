#ifndef GRPD_CLI_HPP
#define GRPD_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace grpd::cli {

  // Exit codes of `run`.
  inline constexpr int EXIT_OK          = 0;
  inline constexpr int EXIT_FAIL        = 1;  // a check found a discrepancy
  inline constexpr int EXIT_INPUT_ERROR = 2;  // bad arguments, files or caps

  // Runs one command; `args` excludes the program name. Reports go to `out`,
  // diagnostics to `err`.
  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace grpd::cli

#endif  // GRPD_CLI_HPP
