#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cnslab {

/// Exit codes of the command line tool.
enum ExitCode : int { exit_ok = 0, exit_config = 2, exit_runtime = 3, exit_verify = 4 };

/// Subcommands: run <config>, analyze <series> --fit <key> [--p0 v],
/// verify [--suite name], scenario list, resume <checkpoint>.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

}  // namespace cnslab
