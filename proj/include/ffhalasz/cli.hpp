// Batch front end. Exit codes: 0 success with every verdict passing,
// 2 when any bound verdict or identity check fails, 1 on usage, input or
// resource errors.
#pragma once

#include <ostream>

namespace ffh::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFinding = 2;

inline constexpr const char* kToolVersion = "0.1.0";

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ffh::cli
