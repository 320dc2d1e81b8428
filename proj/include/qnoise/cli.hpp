#pragma once

#include <iosfwd>

namespace qnoise::cli {

/// Exit codes: 0 success, 1 validation error (bad arguments, config, units or
/// ranges), 2 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

int run(int argc, char** argv);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace qnoise::cli
