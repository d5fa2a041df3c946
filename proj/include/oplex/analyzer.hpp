// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

// Module analyzer: turns a set of input files into per-module parameter
// data ready for catalog ingestion, through either frontend.

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "oplex/catalog.hpp"
#include "oplex/tree_frontend.hpp"

namespace oplex::analyzer {

/// Expands directories into the files they contain whose name ends with
/// `suffix` (non-recursive, sorted) and keeps plain files as given.
std::vector<std::string> expandInputs(const std::vector<std::string>& paths, std::string_view suffix);

struct YangOptions {
  /// Dependency modules: loaded for resolution, never ingested.
  std::vector<std::string> searchPaths;
  unsigned jobs = 1;
  schema::ResolveOptions resolve;
};

struct Analysis {
  std::map<std::string, catalog::ModuleData> modules;
  std::vector<std::string> warnings;  // "module: message"
  std::size_t recordCount() const;
};

/// Native pipeline: parse, resolve, extract. Every non-submodule file among
/// `paths` yields one module entry. The digest of a module covers its own
/// files, its submodules and its transitive imports.
Analysis analyzeYang(const std::vector<std::string>& paths, std::string_view vendor, const YangOptions& options = {});

struct TreeOptions {
  /// YANG files or directories whose import statements provide the prefix
  /// bindings used in augment paths.
  std::vector<std::string> prefixSources;
};

/// Tree-diagram pipeline. All diagrams are parsed first so that augment
/// sections can look up list nodes drawn in other modules' diagrams.
Analysis analyzeTrees(const std::vector<std::string>& paths, std::string_view vendor, const TreeOptions& options = {});

/// Prefix bindings of every module found in `yangPaths`, submodule
/// bindings merged into their parent module.
std::map<std::string, std::map<std::string, std::string>> collectPrefixes(const std::vector<std::string>& yangPaths);

std::string readText(const std::string& path);

}  // namespace oplex::analyzer
