#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace infot::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitCheckFailed = 3;

/// Runs one command line. `args` includes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace infot::cli
