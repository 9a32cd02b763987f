#pragma once

// Helper to drive the installed CLI binary and capture stdout + exit status.

#include <array>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <sys/wait.h>

namespace cli {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

/// Runs `HYBRID_CLI_PATH <args>` through the shell; stderr optionally merged.
inline RunResult run(const std::string& args, bool merge_stderr = true) {
  std::string cmd = std::string(HYBRID_CLI_PATH) + " " + args;
  if (merge_stderr) cmd += " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
  RunResult res;
  std::array<char, 4096> buf{};
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.output.append(buf.data(), n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

}  // namespace cli
