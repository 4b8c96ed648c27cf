// Copyright (c) edgeprio contributors.
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <string>
#include <vector>

#include "edgeprio/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return edgeprio::run_cli(args, std::cout, std::cerr);
}
