// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

// Shared helpers for the test suites.

#pragma once

#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oplex/dimension.hpp"
#include "oplex/params.hpp"
#include "oplex/schema.hpp"
#include "oplex/yang_parser.hpp"

namespace oplex::testing {

inline std::filesystem::path sourceDir() { return OPLEX_SOURCE_DIR; }
inline std::filesystem::path corpusDir() { return sourceDir() / "corpus" / "openconfig"; }
inline std::filesystem::path treeDir() { return sourceDir() / "corpus" / "openconfig-trees"; }

class TempDir {
 public:
  TempDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() / "oplex-test-XXXXXX").string();
    path_ = ::mkdtemp(tmpl.data());
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void writeText(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

inline std::string readText(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Module set built from in-memory sources.
inline schema::ModuleSet moduleSet(const std::vector<std::string>& sources) {
  schema::ModuleSet set;
  int n = 0;
  for (const auto& src : sources) {
    const std::string name = "mem" + std::to_string(n++) + ".yang";
    schema::addModule(set, schema::makeModuleFile(yang::parseSource(src, name), name));
  }
  schema::refreshImports(set);
  return set;
}

inline std::vector<ParameterRecord> recordsOf(const std::vector<std::string>& sources, const std::string& module) {
  const auto set = moduleSet(sources);
  auto res = extractModuleSet(set, {module}, "test");
  return res.recordsByModule[module];
}

// ---- synthetic schemas with known instance counts -------------------------

struct SynNode {
  enum Kind { Container, List, Leaf, LeafList } kind = Container;
  std::string name;
  std::uint64_t size = 1;  // lists and leaf-lists
  std::vector<SynNode> children;
};

struct SynModule {
  std::string name;
  std::vector<SynNode> top;
};

inline void emitYang(const SynNode& n, int indent, std::string& out) {
  const std::string pad(indent * 2, ' ');
  switch (n.kind) {
    case SynNode::Leaf: out += pad + "leaf " + n.name + " { type string; }\n"; return;
    case SynNode::LeafList: out += pad + "leaf-list " + n.name + " { type string; }\n"; return;
    case SynNode::Container: out += pad + "container " + n.name + " {\n"; break;
    case SynNode::List: out += pad + "list " + n.name + " {\n" + pad + "  config false;\n"; break;
  }
  for (const auto& c : n.children) emitYang(c, indent + 1, out);
  out += pad + "}\n";
}

inline std::string toYang(const SynModule& m) {
  std::string out = "module " + m.name + " {\n  yang-version 1.1;\n  namespace \"urn:test:" + m.name +
                    "\";\n  prefix t;\n";
  for (const auto& n : m.top) emitYang(n, 1, out);
  return out + "}\n";
}

/// One exact size rule per list and leaf-list path.
inline void sizeRules(const SynNode& n, SchemaPath path, dimension::InstanceProfile& out) {
  path.push(n.name);
  if (n.kind == SynNode::List || n.kind == SynNode::LeafList) out.rules.push_back({path.str(), n.size});
  for (const auto& c : n.children) sizeRules(c, path, out);
}

inline dimension::InstanceProfile instanceFor(const SynModule& m) {
  dimension::InstanceProfile p;
  for (const auto& n : m.top) sizeRules(n, {}, p);
  return p;
}

/// Counts every value slot of the fully instantiated tree by visiting each
/// list entry and each leaf-list element one at a time.
inline std::uint64_t enumerateInstances(const SynNode& n) {
  std::uint64_t count = 0;
  switch (n.kind) {
    case SynNode::Leaf: return 1;
    case SynNode::LeafList:
      for (std::uint64_t i = 0; i < n.size; ++i) ++count;
      return count;
    case SynNode::Container:
      for (const auto& c : n.children) count += enumerateInstances(c);
      return count;
    case SynNode::List:
      for (std::uint64_t i = 0; i < n.size; ++i) {
        for (const auto& c : n.children) count += enumerateInstances(c);
      }
      return count;
  }
  return count;
}

inline std::uint64_t enumerateInstances(const SynModule& m) {
  std::uint64_t count = 0;
  for (const auto& n : m.top) count += enumerateInstances(n);
  return count;
}

class SynGenerator {
 public:
  explicit SynGenerator(std::uint32_t seed) : rng_(seed) {}

  SynModule module(const std::string& name, int maxDepth = 4, std::uint64_t maxSize = 4) {
    SynModule m{name, {}};
    const int tops = pick(1, 3);
    for (int i = 0; i < tops; ++i) m.top.push_back(node(1, maxDepth, maxSize));
    return m;
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  SynNode node(int depth, int maxDepth, std::uint64_t maxSize) {
    SynNode n;
    n.name = "n" + std::to_string(counter_++);
    const bool interior = depth < maxDepth && pick(0, 2) > 0;
    if (interior) {
      n.kind = pick(0, 1) ? SynNode::List : SynNode::Container;
      const int kids = pick(1, 4);
      for (int i = 0; i < kids; ++i) n.children.push_back(node(depth + 1, maxDepth, maxSize));
    } else {
      n.kind = pick(0, 1) ? SynNode::Leaf : SynNode::LeafList;
    }
    if (n.kind == SynNode::List || n.kind == SynNode::LeafList) n.size = static_cast<std::uint64_t>(pick(1, static_cast<int>(maxSize)));
    return n;
  }

  std::mt19937 rng_;
  int counter_ = 0;
};

/// The schema `list device(2){leaf name; list iface(3){leaf mtu; leaf-list ip(4)}}`.
inline SynModule workedExample() {
  SynNode ip{SynNode::LeafList, "ip", 4, {}};
  SynNode mtu{SynNode::Leaf, "mtu", 1, {}};
  SynNode iface{SynNode::List, "iface", 3, {mtu, ip}};
  SynNode name{SynNode::Leaf, "name", 1, {}};
  SynNode device{SynNode::List, "device", 2, {name, iface}};
  return SynModule{"worked", {device}};
}

}  // namespace oplex::testing
