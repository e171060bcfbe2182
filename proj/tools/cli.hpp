#pragma once

#include <ostream>

namespace tricomi::cli {

/// Parses argv and runs one subcommand. Returns 0 on success, 1 on invalid input
/// (including unknown options and config keys) and 2 when a computation fails.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tricomi::cli
