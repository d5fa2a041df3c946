// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace oplex::cli {

struct Environment {
  bool stdoutIsTerminal = false;
  std::optional<std::string> catalogDir;  // OPLEX_CATALOG
};

/// Runs one command line (without the program name). Machine output goes to
/// `out`, diagnostics to `err`. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env = {});

}  // namespace oplex::cli
