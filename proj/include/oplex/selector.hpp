// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

// Module selection by name matching between active functions and catalog
// module names.

#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oplex/catalog.hpp"

namespace oplex::selector {

struct ArchitectureProfile {
  std::string name;
  std::string vendor;
  std::vector<std::string> functions;
  std::vector<std::string> baseFunctions;
  bool agnostic = false;

  bool operator==(const ArchitectureProfile&) const = default;
};

/// Parses `{name, vendor, functions, baseFunctions, agnostic}`. Throws
/// InvalidProfile.
ArchitectureProfile parseProfile(std::string_view json, const std::string& source = "<profile>");
ArchitectureProfile loadProfile(const std::filesystem::path& file);

/// Every `*.json` profile of a directory, sorted by name. Throws
/// InvalidProfile on duplicate names.
std::vector<ArchitectureProfile> loadProfiles(const std::filesystem::path& dir);

/// `ref` is a profile file path or the name of a profile in `dir`. Throws
/// UnknownProfile.
ArchitectureProfile findProfile(const std::string& ref, const std::filesystem::path& dir);

/// The agnostic profile: every module of the vendor.
ArchitectureProfile agnosticProfile(std::string vendor);

/// Lowercases, drops a leading "<vendor>-" and re-joins the tokens split on
/// '-', '_' and whitespace with '-'.
std::string normalize(std::string_view name, std::string_view vendor);

/// True when the normalized module name contains the normalized function.
bool matches(std::string_view module, std::string_view function, std::string_view vendor);

struct Selection {
  ArchitectureProfile profile;
  std::string vendor;
  std::set<std::string> matchedModules;
  std::set<std::string> unmatchedFunctions;
  std::vector<std::pair<std::string, std::string>> explain;  // (function, module), sorted
};

/// Throws UnknownVendor when the catalog has no entry for the vendor.
Selection selectModules(const catalog::Catalog& catalog, const ArchitectureProfile& profile);

}  // namespace oplex::selector
