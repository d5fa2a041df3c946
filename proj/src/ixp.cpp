// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

#include "oplex/ixp.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "oplex/analyzer.hpp"

namespace oplex::ixp {

using nlohmann::json;

namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& path, const std::string& why) const {
    throw Error(ErrorCode::MalformedInput, path + ": " + why, SourcePos{source_});
  }

  const json& rows(const json& doc, const std::string& table, bool required) const {
    static const json kEmpty = json::array();
    if (!doc.contains(table)) {
      if (required) fail("/" + table, "missing table");
      return kEmpty;
    }
    const auto& t = doc[table];
    if (!t.is_object() || !t.contains("data") || !t["data"].is_array()) fail("/" + table, "expected {\"data\": [...]}");
    return t["data"];
  }

  std::int64_t integer(const json& row, const std::string& path, const char* key) const {
    if (!row.contains(key) || !row[key].is_number_integer()) fail(path + "/" + key, "expected an integer");
    return row[key].get<std::int64_t>();
  }

  std::optional<std::int64_t> optInteger(const json& row, const std::string& path, const char* key) const {
    if (!row.contains(key) || row[key].is_null()) return std::nullopt;
    return integer(row, path, key);
  }

 private:
  std::string source_;
};

std::string csvField(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string reasonsText(const std::set<Reason>& reasons) {
  std::string out;
  for (auto r : reasons) {
    if (!out.empty()) out += ';';
    out += reasonName(r);
  }
  return out;
}

}  // namespace

std::vector<IxpRecord> parsePeeringDb(std::string_view text, const std::string& source) {
  Reader rd(source);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedInput, e.what(), SourcePos{source});
  }
  if (!doc.is_object()) rd.fail("", "expected a JSON object");

  std::map<std::int64_t, IxpRecord> byId;
  const auto& ix = rd.rows(doc, "ix", true);
  for (std::size_t i = 0; i < ix.size(); ++i) {
    const std::string path = "/ix/data/" + std::to_string(i);
    const auto& row = ix[i];
    if (!row.is_object()) rd.fail(path, "expected an object");
    IxpRecord r;
    r.id = rd.integer(row, path, "id");
    if (row.contains("name") && row["name"].is_string()) r.name = row["name"].get<std::string>();
    if (!byId.emplace(r.id, r).second) rd.fail(path + "/id", "duplicate ix id " + std::to_string(r.id));
  }

  const auto& ixfac = rd.rows(doc, "ixfac", false);
  for (std::size_t i = 0; i < ixfac.size(); ++i) {
    const std::string path = "/ixfac/data/" + std::to_string(i);
    const auto it = byId.find(rd.integer(ixfac[i], path, "ix_id"));
    const auto fac = rd.integer(ixfac[i], path, "fac_id");
    if (it != byId.end()) it->second.facilities.push_back(fac);
  }

  std::map<std::int64_t, std::int64_t> lanToIx;
  const auto& ixlan = rd.rows(doc, "ixlan", false);
  for (std::size_t i = 0; i < ixlan.size(); ++i) {
    const std::string path = "/ixlan/data/" + std::to_string(i);
    lanToIx[rd.integer(ixlan[i], path, "id")] = rd.integer(ixlan[i], path, "ix_id");
  }

  const auto& netixlan = rd.rows(doc, "netixlan", false);
  for (std::size_t i = 0; i < netixlan.size(); ++i) {
    const std::string path = "/netixlan/data/" + std::to_string(i);
    const auto& row = netixlan[i];
    if (!row.is_object()) rd.fail(path, "expected an object");
    const auto lan = lanToIx.find(rd.integer(row, path, "ixlan_id"));
    if (lan == lanToIx.end()) continue;
    const auto it = byId.find(lan->second);
    if (it == byId.end()) continue;
    Connection c;
    c.operatorId = rd.integer(row, path, "net_id");
    if (row.contains("speed") && !row["speed"].is_null()) {
      if (!row["speed"].is_number_unsigned()) rd.fail(path + "/speed", "expected a non-negative integer");
      c.speed = row["speed"].get<std::uint64_t>();
    }
    if (row.contains("status")) {
      if (!row["status"].is_string()) rd.fail(path + "/status", "expected a string");
      c.active = row["status"].get<std::string>() == "ok";
    }
    if (row.contains("operational") && !row["operational"].is_null()) {
      if (!row["operational"].is_boolean()) rd.fail(path + "/operational", "expected a boolean");
      c.active = c.active && row["operational"].get<bool>();
    }
    c.facilityId = rd.optInteger(row, path, "fac_id");
    if (row.contains("port_count") && !row["port_count"].is_null()) {
      if (!row["port_count"].is_number_unsigned() || row["port_count"].get<std::uint64_t>() < 1) {
        rd.fail(path + "/port_count", "expected a positive integer");
      }
      c.portCount = row["port_count"].get<std::uint64_t>();
    }
    it->second.connections.push_back(c);
  }

  std::vector<IxpRecord> out;
  for (auto& [id, r] : byId) {
    std::sort(r.facilities.begin(), r.facilities.end());
    r.facilities.erase(std::unique(r.facilities.begin(), r.facilities.end()), r.facilities.end());
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<IxpRecord> loadPeeringDb(const std::filesystem::path& file) {
  return parsePeeringDb(analyzer::readText(file.string()), file.string());
}

std::string_view reasonName(Reason r) noexcept {
  switch (r) {
    case Reason::NoFacility: return "no-facility";
    case Reason::FewerThan3Operators: return "fewer-than-3-operators";
    case Reason::NullSpeedLink: return "null-speed-link";
  }
  return "";
}

std::string_view estimatorName(Estimator e) noexcept { return e == Estimator::Floor ? "floor" : "ceil"; }

Estimator parseEstimator(std::string_view text) {
  if (text == "floor") return Estimator::Floor;
  if (text == "ceil") return Estimator::Ceil;
  throw Error(ErrorCode::MalformedInput, "unknown estimator '" + std::string(text) + "'");
}

IxpSizeEstimate classify(const IxpRecord& record) {
  IxpSizeEstimate e;
  e.ixpId = record.id;
  e.name = record.name;
  std::set<std::int64_t> operators;
  bool nullSpeed = false;
  for (const auto& c : record.connections) {
    if (!c.active) continue;
    operators.insert(c.operatorId);
    if (c.speed == 0) nullSpeed = true;
  }
  e.facilities = record.facilities.size();
  e.activeOperators = operators.size();
  if (record.facilities.empty()) e.invalidReasons.insert(Reason::NoFacility);
  if (operators.size() < 3) e.invalidReasons.insert(Reason::FewerThan3Operators);
  if (nullSpeed) e.invalidReasons.insert(Reason::NullSpeedLink);
  e.valid = e.invalidReasons.empty();
  return e;
}

std::vector<IxpSizeEstimate> filterValidIxps(const std::vector<IxpRecord>& records) {
  std::vector<IxpSizeEstimate> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(classify(r));
  return out;
}

std::vector<FacilityEstimate> portsPerFacility(const IxpRecord& record) {
  std::vector<FacilityEstimate> out;
  for (auto f : record.facilities) out.push_back({f, 0, 0});
  if (out.empty()) return out;
  std::uint64_t unlocated = 0;
  for (const auto& c : record.connections) {
    if (!c.active) continue;
    const auto it = c.facilityId ? std::lower_bound(out.begin(), out.end(), *c.facilityId,
                                                    [](const auto& f, std::int64_t id) { return f.facilityId < id; })
                                 : out.end();
    if (it != out.end() && it->facilityId == *c.facilityId) {
      it->ports += c.portCount;
    } else {
      unlocated += c.portCount;
    }
  }
  const std::uint64_t share = unlocated / out.size();
  const std::uint64_t rest = unlocated % out.size();
  for (std::size_t i = 0; i < out.size(); ++i) out[i].ports += share + (i < rest ? 1 : 0);
  return out;
}

IxpSizeEstimate estimateSwitches(const IxpRecord& record, Estimator estimator) {
  IxpSizeEstimate e = classify(record);
  if (!e.valid) {
    throw Error(ErrorCode::InvalidRecord,
                "IXP " + std::to_string(record.id) + " is not valid (" + reasonsText(e.invalidReasons) + ")");
  }
  e.perFacility = portsPerFacility(record);
  for (auto& f : e.perFacility) {
    f.switches = estimator == Estimator::Floor ? 1 + f.ports / kPortsPerSwitch
                                               : std::max<std::uint64_t>(1, (f.ports + kPortsPerSwitch - 1) / kPortsPerSwitch);
    e.ports += f.ports;
    e.estimatedSwitches += f.switches;
  }
  return e;
}

std::vector<IxpSizeEstimate> estimateAll(const std::vector<IxpRecord>& records, Estimator estimator) {
  std::vector<IxpSizeEstimate> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    auto e = classify(r);
    out.push_back(e.valid ? estimateSwitches(r, estimator) : e);
  }
  return out;
}

std::vector<HistogramBucket> switchHistogram(const std::vector<IxpSizeEstimate>& estimates) {
  std::map<std::uint64_t, std::size_t> counts;
  std::size_t total = 0;
  for (const auto& e : estimates) {
    if (!e.valid) continue;
    ++counts[e.estimatedSwitches];
    ++total;
  }
  std::vector<HistogramBucket> out;
  std::size_t running = 0;
  for (const auto& [s, n] : counts) {
    running += n;
    out.push_back({s, n, 100.0 * static_cast<double>(running) / static_cast<double>(total)});
  }
  return out;
}

std::string sizesCsv(const std::vector<IxpSizeEstimate>& estimates) {
  std::ostringstream out;
  out << "ixp_id,name,valid,reasons,facilities,active_operators,ports,switches\n";
  for (const auto& e : estimates) {
    out << e.ixpId << ',' << csvField(e.name) << ',' << (e.valid ? "true" : "false") << ','
        << reasonsText(e.invalidReasons) << ',' << e.facilities << ',' << e.activeOperators << ','
        << e.ports << ',' << e.estimatedSwitches << '\n';
  }
  return out.str();
}

std::string histogramCsv(const std::vector<HistogramBucket>& buckets) {
  std::ostringstream out;
  out << "switches,count,cumulative_percent\n";
  for (const auto& b : buckets) {
    char pct[32];
    std::snprintf(pct, sizeof pct, "%.2f", b.cumulativePercent);
    out << b.switches << ',' << b.count << ',' << pct << '\n';
  }
  return out.str();
}

const std::vector<std::string>& tableOrder() {
  static const std::vector<std::string> kOrder{
      "L2-LAG",          "L2-STP",          "L3-VxLAN-Static",     "L3-VxLAN-ISIS",      "L3-VxLAN-OSPF",
      "L3-Overlay-ISIS", "L3-Overlay-OSPF", "L3-Overlay-ISIS-BGP", "L3-Overlay-OSPF-BGP"};
  return kOrder;
}

ArchitectureTable scoreIxpArchitectures(const catalog::Catalog& catalog, const std::filesystem::path& profilesDir,
                                        const dimension::InstanceProfile& instance, unsigned jobs) {
  auto profiles = selector::loadProfiles(profilesDir);
  std::vector<selector::ArchitectureProfile> ordered;
  for (const auto& name : tableOrder()) {
    const auto it = std::find_if(profiles.begin(), profiles.end(), [&](const auto& p) { return p.name == name; });
    if (it == profiles.end()) {
      throw Error(ErrorCode::UnknownProfile, "architecture '" + name + "' missing from " + profilesDir.string());
    }
    ordered.push_back(*it);
    profiles.erase(it);
  }
  ordered.insert(ordered.end(), profiles.begin(), profiles.end());

  ArchitectureTable table;
  std::set<std::string> seen;
  const auto addColumn = [&](const std::string& f) {
    if (seen.insert(f).second) table.functions.push_back(f);
  };
  for (const auto& p : ordered) std::for_each(p.baseFunctions.begin(), p.baseFunctions.end(), addColumn);
  for (const auto& p : ordered) std::for_each(p.functions.begin(), p.functions.end(), addColumn);

  std::optional<dimension::DimensionReport> baseline;
  std::set<std::string> warned;
  for (const auto& p : ordered) {
    const auto sel = selector::selectModules(catalog, p);
    auto rep = dimension::computeDeviceDimension(sel, catalog, instance, jobs);
    if (!baseline) baseline = rep;
    rep = dimension::computeScore(std::move(rep), *baseline);
    for (const auto& f : sel.unmatchedFunctions) {
      if (warned.insert(f).second) table.warnings.push_back("function '" + f + "' matched no module");
    }
    table.rows.push_back({p, sel.matchedModules, rep.total, *rep.oplexScore});
  }
  return table;
}

namespace {

bool activates(const selector::ArchitectureProfile& p, const std::string& f) {
  return std::find(p.functions.begin(), p.functions.end(), f) != p.functions.end() ||
         std::find(p.baseFunctions.begin(), p.baseFunctions.end(), f) != p.baseFunctions.end();
}

}  // namespace

std::string architecturesCsv(const ArchitectureTable& table) {
  std::ostringstream out;
  out << "architecture";
  for (const auto& f : table.functions) out << ',' << csvField(f);
  out << ",modules,delta,score\n";
  for (const auto& r : table.rows) {
    out << csvField(r.profile.name);
    for (const auto& f : table.functions) out << ',' << (activates(r.profile, f) ? 1 : 0);
    out << ',' << r.modules.size() << ',' << r.delta << ',' << r.score.render(2) << '\n';
  }
  return out.str();
}

std::string architecturesMarkdown(const ArchitectureTable& table) {
  std::ostringstream out;
  out << "| function |";
  for (const auto& r : table.rows) out << ' ' << r.profile.name << " |";
  out << "\n|---|";
  for (std::size_t i = 0; i < table.rows.size(); ++i) out << "---:|";
  out << '\n';
  for (const auto& f : table.functions) {
    out << "| " << f << " |";
    for (const auto& r : table.rows) out << ' ' << (activates(r.profile, f) ? "x" : "") << " |";
    out << '\n';
  }
  out << "| **modules** |";
  for (const auto& r : table.rows) out << ' ' << r.modules.size() << " |";
  out << "\n| **delta** |";
  for (const auto& r : table.rows) out << ' ' << r.delta << " |";
  out << "\n| **score** |";
  for (const auto& r : table.rows) out << ' ' << r.score.render(2) << " |";
  out << '\n';
  return out.str();
}

}  // namespace oplex::ixp
