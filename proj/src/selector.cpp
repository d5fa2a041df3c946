// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

#include "oplex/selector.hpp"

#include <algorithm>
#include <cctype>

#include "json.hpp"
#include "oplex/analyzer.hpp"

namespace oplex::selector {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<std::string> stringList(const json& doc, const char* key, const std::string& source) {
  std::vector<std::string> out;
  if (!doc.contains(key)) return out;
  const auto& v = doc[key];
  if (!v.is_array()) throw Error(ErrorCode::InvalidProfile, std::string(key) + " must be an array", SourcePos{source});
  for (const auto& item : v) {
    if (!item.is_string() || item.get<std::string>().empty()) {
      throw Error(ErrorCode::InvalidProfile, std::string(key) + " entries must be non-empty strings", SourcePos{source});
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

ArchitectureProfile parseProfile(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidProfile, e.what(), SourcePos{source});
  }
  if (!doc.is_object()) throw Error(ErrorCode::InvalidProfile, "profile must be a JSON object", SourcePos{source});
  ArchitectureProfile p;
  for (const char* key : {"name", "vendor"}) {
    if (!doc.contains(key) || !doc[key].is_string() || doc[key].get<std::string>().empty()) {
      throw Error(ErrorCode::InvalidProfile, std::string("missing string field '") + key + "'", SourcePos{source});
    }
  }
  p.name = doc["name"].get<std::string>();
  p.vendor = doc["vendor"].get<std::string>();
  p.functions = stringList(doc, "functions", source);
  p.baseFunctions = stringList(doc, "baseFunctions", source);
  if (doc.contains("agnostic")) {
    if (!doc["agnostic"].is_boolean()) throw Error(ErrorCode::InvalidProfile, "agnostic must be a boolean", SourcePos{source});
    p.agnostic = doc["agnostic"].get<bool>();
  }
  if (!p.agnostic && p.functions.empty() && p.baseFunctions.empty()) {
    throw Error(ErrorCode::InvalidProfile, "profile '" + p.name + "' has no functions and is not agnostic",
                SourcePos{source});
  }
  return p;
}

ArchitectureProfile loadProfile(const fs::path& file) {
  std::string text;
  try {
    text = analyzer::readText(file.string());
  } catch (const Error&) {
    throw Error(ErrorCode::UnknownProfile, "cannot read profile", SourcePos{file.string()});
  }
  return parseProfile(text, file.string());
}

std::vector<ArchitectureProfile> loadProfiles(const fs::path& dir) {
  std::vector<ArchitectureProfile> out;
  for (const auto& file : analyzer::expandInputs({dir.string()}, ".json")) {
    if (fs::is_regular_file(file)) out.push_back(loadProfile(file));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i].name == out[i - 1].name) {
      throw Error(ErrorCode::InvalidProfile, "duplicate profile name '" + out[i].name + "'", SourcePos{dir.string()});
    }
  }
  return out;
}

ArchitectureProfile findProfile(const std::string& ref, const fs::path& dir) {
  std::error_code ec;
  if (fs::is_regular_file(ref, ec)) return loadProfile(ref);
  if (fs::is_regular_file(dir / (ref + ".json"), ec)) {
    auto p = loadProfile(dir / (ref + ".json"));
    if (p.name == ref) return p;
  }
  if (fs::is_directory(dir, ec)) {
    for (auto& p : loadProfiles(dir)) {
      if (p.name == ref) return p;
    }
  }
  throw Error(ErrorCode::UnknownProfile, "no profile named '" + ref + "' in " + dir.string());
}

ArchitectureProfile agnosticProfile(std::string vendor) {
  return ArchitectureProfile{"agnostic", std::move(vendor), {}, {}, true};
}

std::string normalize(std::string_view name, std::string_view vendor) {
  std::string s;
  for (unsigned char c : name) s.push_back(static_cast<char>(std::tolower(c)));
  std::string v;
  for (unsigned char c : vendor) v.push_back(static_cast<char>(std::tolower(c)));
  if (!v.empty() && s.size() > v.size() && s.compare(0, v.size(), v) == 0 &&
      (s[v.size()] == '-' || s[v.size()] == '_')) {
    s.erase(0, v.size() + 1);
  }
  std::string out;
  std::string token;
  const auto flush = [&] {
    if (token.empty()) return;
    if (!out.empty()) out.push_back('-');
    out += token;
    token.clear();
  };
  for (char c : s) {
    if (c == '-' || c == '_' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  return out;
}

bool matches(std::string_view module, std::string_view function, std::string_view vendor) {
  const std::string f = normalize(function, vendor);
  return !f.empty() && normalize(module, vendor).find(f) != std::string::npos;
}

Selection selectModules(const catalog::Catalog& catalog, const ArchitectureProfile& profile) {
  if (!catalog.hasVendor(profile.vendor)) {
    throw Error(ErrorCode::UnknownVendor, "vendor '" + profile.vendor + "' has no catalog entries");
  }
  Selection sel;
  sel.profile = profile;
  sel.vendor = profile.vendor;
  const auto modules = catalog.modulesOf(profile.vendor);
  if (profile.agnostic) sel.matchedModules.insert(modules.begin(), modules.end());

  std::set<std::string> functions(profile.baseFunctions.begin(), profile.baseFunctions.end());
  functions.insert(profile.functions.begin(), profile.functions.end());
  for (const auto& f : functions) {
    bool any = false;
    for (const auto& m : modules) {
      if (!matches(m, f, profile.vendor)) continue;
      any = true;
      sel.matchedModules.insert(m);
      sel.explain.emplace_back(f, m);
    }
    if (!any) sel.unmatchedFunctions.insert(f);
  }
  return sel;
}

}  // namespace oplex::selector
