#pragma once

#include <ostream>

namespace twirlsim::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kRuntime = 2, kIo = 3 };

/// Entry point of the `twirlsim` command. Never throws; failures are
/// reported on `err` and mapped to an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace twirlsim::cli
