#pragma once

#include <iosfwd>

namespace morsedc {

/// Full command-line surface; returns the process exit code.
/// 0 = success / all checks passed, 1 = a verification failed, 2 = usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace morsedc
