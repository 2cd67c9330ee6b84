#pragma once

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "test_util.hpp"

namespace testutil {

struct CliResult {
  int exit_code = -1;
  std::string log;  // stdout and stderr
};

// Runs the polgd binary with `args` (already shell-quoted where needed).
inline CliResult run_cli(const std::string& cli, const std::string& args, const std::filesystem::path& log_file) {
  const std::string cmd = "'" + cli + "' " + args + " > '" + log_file.string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.log = slurp(log_file);
  return r;
}

inline std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

}  // namespace testutil
