#pragma once

#include <iosfwd>

namespace feq::cli {

/// Full command-line entry point. Returns the process exit code:
/// 0 success, 1 reproduction check failed, 2 invalid input, 3 numerical failure.
int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace feq::cli
