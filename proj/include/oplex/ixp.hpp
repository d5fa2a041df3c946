// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

// IXP size estimation from PeeringDB-style exports and architecture scoring.
//
// Input adapter. The export is one JSON object with four tables, each in
// PeeringDB's API envelope {"data": [...]}:
//
//   ix        {id, name}
//   ixfac     {ix_id, fac_id}
//   ixlan     {id, ix_id}
//   netixlan  {ixlan_id, net_id, speed, status, operational?, fac_id?, port_count?}
//
// A netixlan row is one connection of operator `net_id`. It is active when
// status is "ok" and `operational` is absent or true. `port_count` defaults
// to 1. Connections without `fac_id` are spread evenly over the IXP's
// facilities in ascending id order, the remainder going to the lowest ids.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "oplex/catalog.hpp"
#include "oplex/dimension.hpp"
#include "oplex/selector.hpp"

namespace oplex::ixp {

struct Connection {
  std::int64_t operatorId = 0;
  std::uint64_t speed = 0;  // Mbit/s; 0 when absent or null
  bool active = true;
  std::optional<std::int64_t> facilityId;
  std::uint64_t portCount = 1;
};

struct IxpRecord {
  std::int64_t id = 0;
  std::string name;
  std::vector<std::int64_t> facilities;  // sorted, unique
  std::vector<Connection> connections;
};

/// Throws MalformedInput naming the JSON path of the offending value.
std::vector<IxpRecord> parsePeeringDb(std::string_view json, const std::string& source = "<input>");
std::vector<IxpRecord> loadPeeringDb(const std::filesystem::path& file);

enum class Reason : std::uint8_t { NoFacility, FewerThan3Operators, NullSpeedLink };

std::string_view reasonName(Reason r) noexcept;

enum class Estimator : std::uint8_t { Floor, Ceil };

std::string_view estimatorName(Estimator e) noexcept;
Estimator parseEstimator(std::string_view text);

inline constexpr std::uint64_t kPortsPerSwitch = 40;

struct FacilityEstimate {
  std::int64_t facilityId = 0;
  std::uint64_t ports = 0;
  std::uint64_t switches = 0;
};

struct IxpSizeEstimate {
  std::int64_t ixpId = 0;
  std::string name;
  bool valid = false;
  std::set<Reason> invalidReasons;
  std::size_t facilities = 0;
  std::size_t activeOperators = 0;
  std::uint64_t ports = 0;
  std::uint64_t estimatedSwitches = 0;
  std::vector<FacilityEstimate> perFacility;
};

/// Validity against the three criteria; switch fields left at zero.
IxpSizeEstimate classify(const IxpRecord& record);
std::vector<IxpSizeEstimate> filterValidIxps(const std::vector<IxpRecord>& records);

/// Active ports per facility, unlocated connections distributed.
std::vector<FacilityEstimate> portsPerFacility(const IxpRecord& record);

/// Floor: 1 + floor(ports / 40) per facility. Ceil: max(1, ceil(ports / 40)).
/// Throws InvalidRecord for an invalid IXP.
IxpSizeEstimate estimateSwitches(const IxpRecord& record, Estimator estimator = Estimator::Floor);

/// Classification of every record plus switch estimates for the valid ones.
std::vector<IxpSizeEstimate> estimateAll(const std::vector<IxpRecord>& records, Estimator estimator);

struct HistogramBucket {
  std::uint64_t switches = 0;
  std::size_t count = 0;
  double cumulativePercent = 0;
};

/// Distribution of switch counts over the valid estimates.
std::vector<HistogramBucket> switchHistogram(const std::vector<IxpSizeEstimate>& estimates);

std::string sizesCsv(const std::vector<IxpSizeEstimate>& estimates);
std::string histogramCsv(const std::vector<HistogramBucket>& buckets);

/// Architecture names in comparison-table order; the first one is the baseline.
const std::vector<std::string>& tableOrder();

struct ArchitectureRow {
  selector::ArchitectureProfile profile;
  std::set<std::string> modules;
  std::uint64_t delta = 0;
  dimension::Ratio score;
};

struct ArchitectureTable {
  std::vector<std::string> functions;  // activation matrix columns
  std::vector<ArchitectureRow> rows;
  std::vector<std::string> warnings;
};

/// Scores every profile of `profilesDir` against the first architecture of
/// tableOrder(). Rows follow tableOrder(); other profiles come after, sorted
/// by name. Throws UnknownProfile when a table architecture is missing.
ArchitectureTable scoreIxpArchitectures(const catalog::Catalog& catalog, const std::filesystem::path& profilesDir,
                                        const dimension::InstanceProfile& instance, unsigned jobs = 1);

std::string architecturesCsv(const ArchitectureTable& table);
std::string architecturesMarkdown(const ArchitectureTable& table);

}  // namespace oplex::ixp
