#pragma once

#include <ostream>

namespace lightshift {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitGuard = 3;

/// Entry point of the `lightshift` executable.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace lightshift
