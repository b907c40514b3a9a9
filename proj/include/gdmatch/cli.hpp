#ifndef GDMATCH_CLI_HPP
#define GDMATCH_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace gdm {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitViolation = 2 };

/**
 *  Entry point of the `gdmatch` tool: gen, run, opt, certify, bench.
 *  `args` excludes the program name. The DM_MODE environment variable, when
 *  set to exact or float, is the mode for documents that do not name one.
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace gdm

#endif // GDMATCH_CLI_HPP
