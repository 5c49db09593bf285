// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  return emgclean::cli::run_cli(argc, argv, std::cout, std::cerr);
}
