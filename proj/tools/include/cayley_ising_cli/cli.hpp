#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cayley_ising::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kResourceLimit = 3,
  kRegionError = 4,
};

inline constexpr int kSchemaVersion = 1;
// Relative --out paths are resolved against this directory when set.
inline constexpr const char* kOutDirEnv = "CAYLEY_ISING_OUT_DIR";

// args excludes the program name. The whole document is rendered before
// anything is written, so a failing run never leaves partial output.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cayley_ising::cli
