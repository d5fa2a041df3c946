// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

#include "oplex/dimension.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <future>

#include "json.hpp"
#include "oplex/analyzer.hpp"

namespace oplex::dimension {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<std::string> splitPattern(std::string_view pattern) {
  return SchemaPath::parse(pattern).segments();
}

bool matchFrom(const std::vector<std::string>& pat, std::size_t pi, const std::vector<std::string>& segs,
               std::size_t si) {
  while (pi < pat.size()) {
    if (pat[pi] == "**") {
      for (std::size_t k = si; k <= segs.size(); ++k) {
        if (matchFrom(pat, pi + 1, segs, k)) return true;
      }
      return false;
    }
    if (si == segs.size() || ::fnmatch(pat[pi].c_str(), segs[si].c_str(), 0) != 0) return false;
    ++pi;
    ++si;
  }
  return si == segs.size();
}

std::uint64_t checkedMul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::DimensionOverflow, "dimension exceeds 64 bits");
  return r;
}

std::uint64_t checkedAdd(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::DimensionOverflow, "dimension exceeds 64 bits");
  return r;
}

std::uint64_t positiveSize(const json& v, const std::string& what, const std::string& source) {
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() < 1) {
    throw Error(ErrorCode::InvalidProfile, what + " must be a positive integer", SourcePos{source});
  }
  return v.get<std::uint64_t>();
}

}  // namespace

bool globMatch(std::string_view pattern, const SchemaPath& path) {
  return matchFrom(splitPattern(pattern), 0, path.segments(), 0);
}

std::uint64_t InstanceProfile::sizeFor(const SchemaPath& path) const {
  for (const auto& r : rules) {
    if (globMatch(r.pattern, path)) return r.size;
  }
  return defaultSize;
}

InstanceProfile parseInstanceProfile(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidProfile, e.what(), SourcePos{source});
  }
  if (!doc.is_object()) throw Error(ErrorCode::InvalidProfile, "instance profile must be a JSON object", SourcePos{source});
  InstanceProfile p;
  if (doc.contains("defaultSize")) p.defaultSize = positiveSize(doc["defaultSize"], "defaultSize", source);
  if (doc.contains("rules")) {
    if (!doc["rules"].is_array()) throw Error(ErrorCode::InvalidProfile, "rules must be an array", SourcePos{source});
    for (const auto& r : doc["rules"]) {
      if (!r.is_object() || !r.contains("pattern") || !r["pattern"].is_string() || !r.contains("size")) {
        throw Error(ErrorCode::InvalidProfile, "each rule needs a string pattern and a size", SourcePos{source});
      }
      p.rules.push_back({r["pattern"].get<std::string>(), positiveSize(r["size"], "rule size", source)});
    }
  }
  return p;
}

InstanceProfile loadInstanceProfile(const fs::path& file) {
  return parseInstanceProfile(analyzer::readText(file.string()), file.string());
}

ModuleDimension computeModuleDimension(const std::vector<ParameterRecord>& records, const InstanceProfile& instance) {
  ModuleDimension out;
  out.terms.reserve(records.size());
  for (const auto& r : records) {
    DimensionTerm t;
    t.record = r;
    for (const auto& list : r.listAncestry) t.ancestryMultiplier = checkedMul(t.ancestryMultiplier, instance.sizeFor(list));
    if (r.kind == ParamKind::LeafList) t.leafListSize = instance.sizeFor(r.path);
    t.contribution = checkedMul(t.ancestryMultiplier, t.leafListSize);
    out.delta = checkedAdd(out.delta, t.contribution);
    out.terms.push_back(std::move(t));
  }
  return out;
}

std::string Ratio::render(int places) const {
  unsigned __int128 scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const unsigned __int128 scaled = (static_cast<unsigned __int128>(num) * scale * 2 + den) / (static_cast<unsigned __int128>(den) * 2);
  const auto whole = static_cast<std::uint64_t>(scaled / scale);
  std::string frac = std::to_string(static_cast<std::uint64_t>(scaled % scale));
  std::string out = std::to_string(whole);
  if (places > 0) out += "." + std::string(places - frac.size(), '0') + frac;
  return out;
}

std::strong_ordering Ratio::operator<=>(const Ratio& other) const {
  const auto l = static_cast<unsigned __int128>(num) * other.den;
  const auto r = static_cast<unsigned __int128>(other.num) * den;
  return l <=> r;
}

std::string_view modeName(Mode m) noexcept {
  switch (m) {
    case Mode::Device: return "device";
    case Mode::Module: return "module";
    case Mode::Agnostic: return "agnostic";
  }
  return "device";
}

Mode parseMode(std::string_view text) {
  if (text == "device") return Mode::Device;
  if (text == "module") return Mode::Module;
  if (text == "agnostic") return Mode::Agnostic;
  throw Error(ErrorCode::InvalidProfile, "unknown mode '" + std::string(text) + "'");
}

DimensionReport computeDeviceDimension(const selector::Selection& selection, const catalog::Catalog& catalog,
                                       const InstanceProfile& instance, unsigned jobs) {
  std::vector<std::pair<std::string, const catalog::CatalogEntry*>> work;
  for (const auto& m : selection.matchedModules) {
    const auto* e = catalog.preferred(selection.vendor, m);
    if (!e) throw Error(ErrorCode::MissingCatalogEntry, "no catalog entry for " + selection.vendor + "/" + m);
    work.emplace_back(m, e);
  }
  std::vector<std::uint64_t> deltas(work.size());
  jobs = std::max(1u, jobs);
  for (std::size_t start = 0; start < work.size(); start += jobs) {
    const std::size_t end = std::min(work.size(), start + jobs);
    std::vector<std::future<std::uint64_t>> batch;
    for (std::size_t i = start; i < end; ++i) {
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                 [&, i] { return computeModuleDimension(work[i].second->records, instance).delta; }));
    }
    for (std::size_t i = start; i < end; ++i) deltas[i] = batch[i - start].get();
  }

  DimensionReport rep;
  rep.profile = selection.profile.name;
  rep.vendor = selection.vendor;
  rep.mode = selection.profile.agnostic ? Mode::Agnostic : Mode::Device;
  for (std::size_t i = 0; i < work.size(); ++i) {
    rep.perModule[work[i].first] = deltas[i];
    rep.total = checkedAdd(rep.total, deltas[i]);
    for (const auto& w : work[i].second->warnings) rep.warnings.push_back(work[i].first + ": " + w);
  }
  for (const auto& f : selection.unmatchedFunctions) rep.warnings.push_back("function '" + f + "' matched no module");
  return rep;
}

DimensionReport computeAgnosticDimension(const catalog::Catalog& catalog, std::string_view vendor) {
  if (!catalog.hasVendor(vendor)) {
    throw Error(ErrorCode::UnknownVendor, "vendor '" + std::string(vendor) + "' has no catalog entries");
  }
  DimensionReport rep;
  rep.profile = "agnostic";
  rep.vendor = std::string(vendor);
  rep.mode = Mode::Agnostic;
  for (const auto& m : catalog.modulesOf(vendor)) {
    const auto* e = catalog.preferred(vendor, m);
    const auto n = static_cast<std::uint64_t>(std::count_if(e->records.begin(), e->records.end(), [](const auto& r) {
      return r.kind == ParamKind::Leaf || r.kind == ParamKind::LeafList;
    }));
    rep.perModule[m] = n;
    rep.total += n;
  }
  return rep;
}

DimensionReport computeScore(DimensionReport report, const DimensionReport& baseline) {
  if (baseline.total == 0) {
    throw Error(ErrorCode::ZeroBaseline, "baseline '" + baseline.profile + "' has dimension 0");
  }
  report.baselineName = baseline.profile;
  report.baselineTotal = baseline.total;
  report.oplexScore = Ratio{report.total, baseline.total};
  return report;
}

}  // namespace oplex::dimension
