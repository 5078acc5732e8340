#pragma once

// Command-line entry point, callable in-process for testing.

namespace conecq::cli {

// Runs the CLI with the given argument vector and returns the process exit
// code: 0 success / all checks hold, 1 a check fails (or a witness does not
// re-verify), 2 inconclusive, 3 usage or input error.
int run(int argc, const char* const* argv);

} // namespace conecq::cli
