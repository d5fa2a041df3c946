// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

// Parameter repository organised per vendor and per module.
//
// On-disk layout (formatVersion 1):
//
//   <dir>/manifest.json              {"formatVersion": 1, "entries": [...]}
//   <dir>/<vendor>/<module>.json       entry from the native YANG frontend
//   <dir>/<vendor>/<module>.tree.json  entry from the tree-diagram frontend
//   <dir>/.lock                        single-writer lock
//
// Each manifest entry is {vendor, module, frontend, file, sourceDigest,
// recordCount}. Each entry document is {vendor, module, frontend,
// sourceDigest, ingestedAt, warnings, records}; every record is {path,
// kind, listAncestry, module, config}. Record vendors equal the entry vendor.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oplex/params.hpp"

namespace oplex::catalog {

inline constexpr int kFormatVersion = 1;

enum class Frontend : std::uint8_t { Native, TreeDiagram };

std::string_view frontendName(Frontend f) noexcept;
Frontend parseFrontend(std::string_view text);

struct EntryKey {
  std::string vendor;
  std::string module;
  Frontend frontend = Frontend::Native;

  auto operator<=>(const EntryKey&) const = default;
};

struct CatalogEntry {
  std::string vendor;
  std::string module;
  std::vector<ParameterRecord> records;
  std::string sourceDigest;
  std::string ingestedAt;  // ISO-8601 UTC
  Frontend frontend = Frontend::Native;
  std::vector<std::string> warnings;

  EntryKey key() const { return {vendor, module, frontend}; }
  bool operator==(const CatalogEntry&) const = default;
};

struct Catalog {
  int formatVersion = kFormatVersion;
  std::map<EntryKey, CatalogEntry> entries;

  const CatalogEntry* find(const EntryKey& key) const;
  /// The native entry when present, otherwise the tree-diagram entry.
  const CatalogEntry* preferred(std::string_view vendor, std::string_view module) const;
  bool hasVendor(std::string_view vendor) const;
  /// Distinct module names of a vendor, sorted.
  std::vector<std::string> modulesOf(std::string_view vendor) const;

  bool operator==(const Catalog&) const = default;
};

/// What the module analyzer produced for one module.
struct ModuleData {
  std::vector<ParameterRecord> records;
  std::string sourceDigest;
  std::vector<std::string> warnings;
};

struct IngestSummary {
  std::size_t inserted = 0;
  std::size_t updated = 0;
  std::size_t unchanged = 0;
};

/// Upserts one entry per module. Entries whose digest is unchanged are kept
/// as they are (timestamp included). Throws VendorMismatch.
Catalog ingest(Catalog catalog, std::string_view vendor, const std::map<std::string, ModuleData>& byModule,
               Frontend frontend, IngestSummary* summary = nullptr, std::string_view now = {});

/// Exact vendor match and case-insensitive substring match on the module
/// name; absent filters match everything.
std::vector<const CatalogEntry*> query(const Catalog& catalog, const std::optional<std::string>& vendor,
                                       const std::optional<std::string>& modulePattern);

/// A missing directory loads as an empty catalog. Throws CatalogCorrupt or
/// UnsupportedFormat, never returns a partial catalog.
Catalog loadCatalog(const std::filesystem::path& dir);

/// Writes under the exclusive lock; unchanged files are not rewritten and
/// the manifest is replaced atomically.
void saveCatalog(const Catalog& catalog, const std::filesystem::path& dir);

std::string sha256Hex(std::string_view data);
std::string utcTimestamp();

}  // namespace oplex::catalog
