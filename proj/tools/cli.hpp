#pragma once

#include <ostream>

namespace rotnum::cli {

enum ExitCode : int { ok = 0, validation_failure = 1, numerical_failure = 2 };

/// Entry point of the `rotnum` tool, with output streams injected so the
/// commands can be driven in-process.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rotnum::cli
