#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tcfbm::cli {

// Exit codes shared by every subcommand.
enum ExitCode : int {
    kSuccess = 0,
    kOracleFailure = 1,
    kInvalidParameters = 2,
    kIoFailure = 3,
};

// Runs one invocation; `args` excludes the program name. JSON and stdout CSV go to
// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Replaces `--config <path>` with the flags stored in the JSON file. The file's
// flags are placed first so explicit flags win.
std::vector<std::string> expand_config(const std::vector<std::string>& args);

}  // namespace tcfbm::cli
