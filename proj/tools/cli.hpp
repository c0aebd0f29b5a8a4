#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace splitdde::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Relative --out paths are resolved against this directory when set.
inline constexpr const char* kOutputDirEnv = "SPLITDDE_OUTPUT_DIR";

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace splitdde::cli
