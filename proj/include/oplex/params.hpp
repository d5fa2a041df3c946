// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "oplex/schema.hpp"

namespace oplex {

/// Slash-joined sequence of schema node names from a module root. A segment
/// carries a "module:" prefix when its node belongs to a different module
/// than the tree it sits in.
class SchemaPath {
 public:
  SchemaPath() = default;
  explicit SchemaPath(std::vector<std::string> segments) : segments_(std::move(segments)) {}
  static SchemaPath parse(std::string_view text);

  const std::vector<std::string>& segments() const noexcept { return segments_; }
  std::size_t size() const noexcept { return segments_.size(); }
  bool empty() const noexcept { return segments_.empty(); }

  void push(std::string segment) { segments_.push_back(std::move(segment)); }
  void pop() { segments_.pop_back(); }

  /// True when this path is a strict prefix of `other`.
  bool isStrictPrefixOf(const SchemaPath& other) const;

  std::string str() const;

  auto operator<=>(const SchemaPath&) const = default;

 private:
  std::vector<std::string> segments_;
};

enum class ParamKind : std::uint8_t { Leaf, LeafList };

std::string_view paramKindName(ParamKind kind) noexcept;
ParamKind parseParamKind(std::string_view text);

struct ParameterRecord {
  SchemaPath path;
  ParamKind kind = ParamKind::Leaf;
  std::vector<SchemaPath> listAncestry;  // outermost first
  std::string module;
  std::string vendor;
  bool config = true;

  bool operator==(const ParameterRecord&) const = default;
};

/// The part of a record compared when checking two frontends against each
/// other: (path, kind, listAncestry).
struct RecordKey {
  std::string path;
  ParamKind kind;
  std::vector<std::string> listAncestry;

  auto operator<=>(const RecordKey&) const = default;
};

RecordKey recordKey(const ParameterRecord& r);

struct RecordMismatch {
  RecordKey key;
  long long delta;  // occurrences in `left` minus occurrences in `right`
};

/// Multiset difference of two record collections by RecordKey; empty when
/// they agree.
std::vector<RecordMismatch> compareRecords(const std::vector<ParameterRecord>& left,
                                           const std::vector<ParameterRecord>& right);

/// One record per leaf and leaf-list reachable from `root`.
std::vector<ParameterRecord> extract(const schema::SchemaNode& root, std::string_view vendor);

struct ExtractionResult {
  std::map<std::string, std::vector<ParameterRecord>> recordsByModule;
  std::vector<schema::Diagnostic> diagnostics;
};

/// Resolves every module of the set and gathers records by owning module.
/// Only modules named in `keep` get an entry; every kept module gets one,
/// even when it owns no records.
ExtractionResult extractModuleSet(const schema::ModuleSet& set, const std::vector<std::string>& keep,
                                  std::string_view vendor, const schema::ResolveOptions& options = {},
                                  unsigned jobs = 1);

}  // namespace oplex
