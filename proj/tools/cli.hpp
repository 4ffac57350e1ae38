#ifndef CONGLAB_TOOLS_CLI_HPP_
#define CONGLAB_TOOLS_CLI_HPP_

#include <iosfwd>

namespace conglab::cli {

  // Exit codes.
  inline constexpr int exit_ok            = 0;
  inline constexpr int exit_falsified     = 1;
  inline constexpr int exit_input_error   = 2;
  inline constexpr int exit_hypothesis    = 3;

  // Runs one command line. Reads CONGRUENCE_LAB_CAP from the environment.
  int run(int argc, char const* const* argv, std::ostream& out, std::ostream& err);

}  // namespace conglab::cli

#endif  // CONGLAB_TOOLS_CLI_HPP_
