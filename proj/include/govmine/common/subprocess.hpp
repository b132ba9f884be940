#pragma once

#include <string>
#include <vector>

namespace govmine {

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
  bool ok() const { return exit_code == 0; }
};

// Runs argv[0] with the given arguments (no shell involved), capturing both
// output streams. `cwd` empty means inherit. Throws std::system_error on
// spawn failure; a non-zero child exit is reported in the result, not thrown.
CommandResult run_command(const std::vector<std::string>& argv,
                          const std::string& cwd = {});

}  // namespace govmine
