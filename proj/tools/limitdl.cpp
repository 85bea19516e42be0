// Copyright (c) limitdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "limitdl/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return limitdl::cli::run(args, std::cout, std::cerr);
}
