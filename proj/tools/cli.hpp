// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "smdc/errors.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace smdc::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kUsage = 2,
    kInfeasible = 3,  // region violation, insufficient shares, budget refusal
    kVerification = 4,
    kIo = 5,
};

int exit_code(ErrorKind kind);

/// Runs the tool on `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smdc::cli
