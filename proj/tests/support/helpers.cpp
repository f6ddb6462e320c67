#include "helpers.hpp"

#include <cstdlib>
#include <sys/wait.h>

namespace testing {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(FOLDPLAN_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

}  // namespace testing
