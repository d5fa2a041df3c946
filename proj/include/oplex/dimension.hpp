// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

// Parameter-space dimension: instance multiplicities applied to parameter
// records, summed per module, per device and across a vendor.

#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oplex/catalog.hpp"
#include "oplex/selector.hpp"

namespace oplex::dimension {

struct SizeRule {
  std::string pattern;
  std::uint64_t size = 1;
};

/// List and leaf-list sizes of a network instance. Patterns are matched
/// against whole schema paths: `*` stands for one segment (or part of one),
/// `**` for any number of segments. The first matching rule wins.
struct InstanceProfile {
  std::uint64_t defaultSize = 1;
  std::vector<SizeRule> rules;

  std::uint64_t sizeFor(const SchemaPath& path) const;
};

bool globMatch(std::string_view pattern, const SchemaPath& path);

/// Parses `{defaultSize, rules: [{pattern, size}]}`. Throws InvalidProfile.
InstanceProfile parseInstanceProfile(std::string_view json, const std::string& source = "<instance>");
InstanceProfile loadInstanceProfile(const std::filesystem::path& file);

struct DimensionTerm {
  ParameterRecord record;
  std::uint64_t leafListSize = 1;
  std::uint64_t ancestryMultiplier = 1;
  std::uint64_t contribution = 1;
};

struct ModuleDimension {
  std::uint64_t delta = 0;
  std::vector<DimensionTerm> terms;
};

/// Throws DimensionOverflow when the count does not fit in 64 bits.
ModuleDimension computeModuleDimension(const std::vector<ParameterRecord>& records, const InstanceProfile& instance);

/// Exact non-negative ratio.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  /// Rounded half up to `places` decimals.
  std::string render(int places = 2) const;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::strong_ordering operator<=>(const Ratio& other) const;
  bool operator==(const Ratio& other) const { return (*this <=> other) == std::strong_ordering::equal; }
};

enum class Mode : std::uint8_t { Device, Module, Agnostic };

std::string_view modeName(Mode m) noexcept;
Mode parseMode(std::string_view text);

struct DimensionReport {
  std::string profile;
  std::string vendor;
  std::map<std::string, std::uint64_t> perModule;
  std::uint64_t total = 0;
  Mode mode = Mode::Device;
  std::optional<std::string> baselineName;
  std::optional<std::uint64_t> baselineTotal;
  std::optional<Ratio> oplexScore;
  std::vector<std::string> warnings;
};

/// Throws MissingCatalogEntry when a selected module has no entry.
DimensionReport computeDeviceDimension(const selector::Selection& selection, const catalog::Catalog& catalog,
                                       const InstanceProfile& instance, unsigned jobs = 1);

/// Leaf plus leaf-list count over every module of the vendor, sizes all 1.
/// Throws UnknownVendor.
DimensionReport computeAgnosticDimension(const catalog::Catalog& catalog, std::string_view vendor);

/// Copy of `report` carrying the baseline and the score. Throws ZeroBaseline.
DimensionReport computeScore(DimensionReport report, const DimensionReport& baseline);

}  // namespace oplex::dimension
