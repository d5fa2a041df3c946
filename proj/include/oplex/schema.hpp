// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

// Schema resolution: include splicing, grouping/uses expansion, refine and
// augment application. The result is one expanded data tree per module in
// which every countable node sits at its final position.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "oplex/yang_parser.hpp"

namespace oplex::schema {

enum class NodeKind : std::uint8_t { ModuleRoot, Container, List, Leaf, LeafList, Choice, Case };

std::string_view nodeKindName(NodeKind kind) noexcept;

struct SchemaNode {
  NodeKind kind = NodeKind::Container;
  std::string name;
  std::string originModule;  // namespace owner; the augmenting module for augmented nodes
  bool config = true;
  std::vector<SchemaNode> children;
  std::vector<std::string> keyNames;  // lists only
  std::optional<std::string> description;
  bool featureGuarded = false;  // carries an if-feature, directly or via uses/augment

  const SchemaNode* child(std::string_view module, std::string_view childName) const;
  SchemaNode* child(std::string_view module, std::string_view childName);

  bool operator==(const SchemaNode&) const = default;
};

/// One parsed file. Submodules keep their own prefix bindings but share the
/// namespace of the module they belong to.
struct ModuleFile {
  std::string name;
  std::string path;
  bool submodule = false;
  std::string belongsTo;  // submodules only
  std::string prefix;     // own prefix (or belongs-to prefix)
  std::map<std::string, std::string> prefixes;  // prefix -> module name, own prefix included
  std::vector<std::string> includes;
  yang::RawStatement root;

  /// Module whose namespace this file contributes to.
  const std::string& namespaceModule() const { return submodule ? belongsTo : name; }
};

struct ModuleSet {
  std::map<std::string, ModuleFile> modules;  // modules and submodules, by name
  std::vector<std::string> unresolvedImports;  // "module -> missing-import"

  const ModuleFile* find(std::string_view name) const;
  /// Names of non-submodule members.
  std::vector<std::string> moduleNames() const;
  /// Prefix bindings of a member; empty when unknown.
  const std::map<std::string, std::string>& prefixBindings(std::string_view module) const;
};

ModuleFile makeModuleFile(yang::RawStatement root, std::string path);

/// Parses every file (concurrently up to `jobs` threads). Parse errors are
/// propagated with the file name, duplicate module names are rejected.
ModuleSet loadModuleSet(const std::vector<std::string>& paths, unsigned jobs = 1);

/// Adds an already-parsed module; throws DuplicateModule.
void addModule(ModuleSet& set, ModuleFile file);

/// Recomputes unresolvedImports after members were added.
void refreshImports(ModuleSet& set);

enum class DiagnosticKind : std::uint8_t {
  UnresolvedAugmentTarget,
  AugmentTargetModuleAbsent,
  IgnoredRefinement,
  OpaqueDataNode,  // anydata / anyxml
  FeatureGuarded,
  DuplicateSibling,
  UnknownKeyword,
};

struct Diagnostic {
  DiagnosticKind kind;
  std::string module;
  std::string message;
};

struct ResolveOptions {
  /// When set, nodes whose if-feature expression is false under this feature
  /// set are pruned. When empty, if-feature guards are ignored.
  std::optional<std::set<std::string>> features;
};

struct ResolveResult {
  SchemaNode root;
  std::vector<Diagnostic> diagnostics;
};

/// Resolves the data tree of `target`. Augments from every member of the
/// set that land inside this tree are applied; rpc, action and
/// notification subtrees are excluded.
ResolveResult resolve(const ModuleSet& set, std::string_view target,
                      const ResolveOptions& options = {});

/// Evaluates a YANG 1.1 if-feature expression ("a and (b or not c)").
/// Prefixes are stripped before lookup.
bool evaluateIfFeature(std::string_view expr, const std::set<std::string>& features);

}  // namespace oplex::schema
