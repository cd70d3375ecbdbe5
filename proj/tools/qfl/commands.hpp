#ifndef QFL_TOOL_COMMANDS_HPP
#define QFL_TOOL_COMMANDS_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace qfl::tool {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2, kUnstable = 3 };

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

int cmd_roots(RunConfig cfg);
int cmd_diagram(RunConfig cfg);
int cmd_spectrum(RunConfig cfg);
int cmd_force(RunConfig cfg);
int cmd_critical(RunConfig cfg);
int cmd_verify(RunConfig cfg);

/// Full command line entry point; returns the process exit code.
int run(int argc, char** argv);
int run(const std::vector<std::string>& args);

}  // namespace qfl::tool

#endif
