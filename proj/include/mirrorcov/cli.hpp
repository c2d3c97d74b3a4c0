#pragma once

namespace mirrorcov {

// Full command-line entry point. Returns the process exit code:
// 0 success, 1 physics/validation failure, 2 usage or config error,
// 3 I/O error.
int run_cli(int argc, const char* const* argv);

}  // namespace mirrorcov
