// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

// Reader for RFC 8340 tree diagrams (the text produced by `pyang -f tree`).
// Emits the same ParameterRecord stream as the native YANG pipeline so the
// two frontends can be checked against each other.

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "oplex/params.hpp"

namespace oplex::tree {

enum class NodeMarker : std::uint8_t { Container, List, Leaf, LeafList, Choice, Case, Other };

std::string_view nodeMarkerName(NodeMarker m) noexcept;

struct TreeLine {
  int depth = 0;
  std::string flags;  // "rw", "ro", "-x", ...
  std::string name;   // without choice/case parentheses and without the '?', '*', '!' suffix
  NodeMarker marker = NodeMarker::Other;
  std::string rawText;  // full text, continuation lines joined
  std::uint32_t lineNumber = 0;
  bool starred = false;
  std::string type;
};

struct TreeSection {
  enum class Kind : std::uint8_t { Data, Augment, Skipped };
  Kind kind = Kind::Data;
  std::string header;         // "rpcs", "notifications", "grouping x", ...
  std::string augmentTarget;  // Augment sections only, as written
  std::vector<TreeLine> lines;
};

struct TreeDiagram {
  std::string module;
  bool submodule = false;
  std::vector<TreeSection> sections;
};

/// Structural parse. Throws MalformedTreeLine (with line number) or
/// EmptyDiagram.
TreeDiagram parseTreeText(std::string_view text, std::string_view sourceName = {});

/// Knowledge that a single diagram does not carry: how each module's
/// prefixes map to module names, and which nodes of other modules' trees are
/// lists (needed for the list ancestry of augmenting nodes).
struct TreeContext {
  std::map<std::string, std::map<std::string, std::string>> prefixesByModule;
  std::set<std::string> listPaths;  // "<tree module>|<canonical path>"

  /// Records every list node of `diagram` in listPaths.
  void addLists(const TreeDiagram& diagram);
};

std::vector<ParameterRecord> recordsFromDiagram(const TreeDiagram& diagram, std::string_view moduleName,
                                                std::string_view vendor, const TreeContext* ctx = nullptr);

/// parseTreeText followed by recordsFromDiagram. An empty moduleName takes
/// the name from the diagram header.
std::vector<ParameterRecord> parseTreeDiagram(std::string_view text, std::string_view moduleName,
                                              std::string_view vendor, const TreeContext* ctx = nullptr);

}  // namespace oplex::tree
