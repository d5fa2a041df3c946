// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>

namespace oplex::fetch {

struct FetchOptions {
  std::string baseUrl = "https://www.peeringdb.com";
  std::filesystem::path cacheDir = ".oplex-cache/peeringdb";
  bool refresh = false;
};

/// Downloads the ix, ixfac, ixlan and netixlan tables (or reuses their cached
/// copies) and returns them combined into one export document. Throws Io.
std::string fetchPeeringDb(const FetchOptions& options);

}  // namespace oplex::fetch
