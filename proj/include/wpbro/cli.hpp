#pragma once

#include "wpbro/error.hpp"

namespace wpbro::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,           // bad flags, unreadable/unwritable files
    kParse = 2,           // scenario or sea-state file rejected
    kInfeasible = 3,      // infeasible sea state (kidney backflow, empty or overfull accumulator)
    kOverload = 4,        // main FCD lost its pressure margin
    kValidation = 5,      // `validate` found a failing check
    kSimulation = 6,      // any other modelling error (divergence, undefined SEC, ...)
};

int exit_code_for(ErrorKind kind) noexcept;

/// Entry point shared by the executable and the tests.
int main(int argc, char** argv);

} // namespace wpbro::cli
