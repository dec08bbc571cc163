#pragma once

#include <iosfwd>

namespace pstforge {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNoSolution = 2;

/// Entry point of the `pstforge` tool. Writes results to the files named by --output,
/// or to `out` when none is given; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pstforge
