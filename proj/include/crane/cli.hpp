#pragma once

#include <string>
#include <vector>

namespace crane {

/// Run the command-line tool. Returns the process exit code:
/// 0 success, 2 usage/config errors, 3 physics/regime/runtime errors.
int run_cli(int argc, const char* const* argv);

/// Same, for in-process use; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace crane
