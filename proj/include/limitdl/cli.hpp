// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace limitdl::cli {

enum ExitCode : int {
    kOk = 0,            ///< success, or the query is entailed
    kNotEntailed = 1,   ///< the query is not entailed (or a counter-model was found)
    kUsage = 2,         ///< bad arguments, unreadable file, parse or sort error
    kRejected = 3,      ///< not limit-linear or not type-consistent
    kBudgetExceeded = 4 ///< saturation ran out of iterations
};

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace limitdl::cli
