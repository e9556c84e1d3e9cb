#ifndef SIGSTAT_CLI_HPP
#define SIGSTAT_CLI_HPP

#include <string>
#include <vector>

namespace sigstat {

/// Runs the command-line tool in-process. Exit codes: 0 success,
/// 2 validation errors, 3 resource/size limits.
int run_cli(const std::vector<std::string>& args);

} // namespace sigstat

#endif
