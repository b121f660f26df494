#pragma once

#include <iosfwd>

namespace vpol::cli {

//! Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kVerifyFailed = 1,
    kDomainOrParse = 2,
    kNumeric = 3,
};

//! Runs the command line `argv[1..argc)`. Results go to `out` (or --output), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vpol::cli
