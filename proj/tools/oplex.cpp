// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

#include <unistd.h>

#include <cstdlib>
#include <iostream>

#include "oplex/cli.hpp"

int main(int argc, char** argv) {
  oplex::cli::Environment env;
  env.stdoutIsTerminal = ::isatty(STDOUT_FILENO) != 0;
  if (const char* dir = std::getenv("OPLEX_CATALOG")) env.catalogDir = dir;
  return oplex::cli::run({argv + 1, argv + argc}, std::cout, std::cerr, env);
}
