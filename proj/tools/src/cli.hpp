#pragma once

#include <ostream>

namespace squeeze::cli {

// Entry point shared by the executable and the tests. Returns the exit code
// (0 ok, 1 physics or configuration error, 2 validation failure).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace squeeze::cli
