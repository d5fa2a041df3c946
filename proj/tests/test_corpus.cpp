// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

// Integration checks against the pinned OpenConfig corpus.

#include "doctest.h"
#include "json.hpp"
#include "oplex/analyzer.hpp"
#include "oplex/ixp.hpp"
#include "oplex/yang_parser.hpp"
#include "support.hpp"

using namespace oplex;

namespace {

const nlohmann::json& pinned() {
  static const auto doc = nlohmann::json::parse(testing::readText(testing::sourceDir() / "fixtures" / "pinned_corpus.json"));
  return doc;
}

const analyzer::Analysis& native() {
  static const auto a = analyzer::analyzeYang({testing::corpusDir().string()}, "openconfig",
                                              {{(testing::corpusDir() / "deps").string()}, 4, {}});
  return a;
}

const analyzer::Analysis& trees() {
  static const auto a = [] {
    analyzer::TreeOptions opts;
    opts.prefixSources = {testing::corpusDir().string(), (testing::corpusDir() / "deps").string()};
    return analyzer::analyzeTrees({testing::treeDir().string()}, "openconfig", opts);
  }();
  return a;
}

catalog::Catalog corpusCatalog() {
  return catalog::ingest({}, "openconfig", native().modules, catalog::Frontend::Native, nullptr, "t");
}

}  // namespace

TEST_CASE("corpus: module and record counts") {
  CHECK(native().modules.size() == pinned()["modules"].get<std::size_t>());
  CHECK(native().recordCount() == pinned()["records"].get<std::size_t>());
  CHECK(native().warnings.empty());
  std::size_t submodules = 0, diagrams = 0;
  for (const auto& e : std::filesystem::directory_iterator(testing::corpusDir())) {
    if (e.path().extension() == ".yang" && yang::parseFile(e.path().string()).keyword == "submodule") ++submodules;
  }
  for (const auto& e : std::filesystem::directory_iterator(testing::treeDir())) diagrams += e.path().extension() == ".tree";
  CHECK(submodules == pinned()["submodules"].get<std::size_t>());
  CHECK(diagrams == pinned()["treeDiagrams"].get<std::size_t>());
  for (const auto& [m, n] : pinned()["moduleRecords"].items()) {
    CAPTURE(m);
    CHECK(native().modules.at(m).records.size() == n.get<std::size_t>());
  }
}

TEST_CASE("corpus: every module is equal under both frontends") {
  std::size_t compared = 0;
  for (const auto& [m, data] : native().modules) {
    const auto it = trees().modules.find(m);
    const std::vector<ParameterRecord> none;
    CAPTURE(m);
    CHECK(compareRecords(data.records, it == trees().modules.end() ? none : it->second.records).empty());
    ++compared;
  }
  CHECK(compared == 71);
  for (const auto& [m, data] : trees().modules) CHECK(native().modules.count(m) == 1);
}

TEST_CASE("corpus: digests follow the import closure") {
  const auto& mods = native().modules;
  CHECK(mods.at("openconfig-bgp").sourceDigest.rfind("sha256:", 0) == 0);
  CHECK(mods.at("openconfig-bgp").sourceDigest != mods.at("openconfig-isis").sourceDigest);
  const auto again = analyzer::analyzeYang({testing::corpusDir().string()}, "openconfig",
                                           {{(testing::corpusDir() / "deps").string()}, 1, {}});
  for (const auto& [m, d] : mods) CHECK(again.modules.at(m).sourceDigest == d.sourceDigest);
}

TEST_CASE("corpus: isis query returns the isis module family") {
  const auto cat = corpusCatalog();
  std::size_t family = 0;
  for (const auto& e : std::filesystem::directory_iterator(testing::corpusDir())) {
    const auto name = e.path().stem().string();
    if (name.rfind("openconfig-isis", 0) == 0 && testing::readText(e.path()).find("\nsubmodule ") == std::string::npos &&
        testing::readText(e.path()).rfind("submodule ", 0) != 0) {
      ++family;
    }
  }
  CHECK(catalog::query(cat, std::string("openconfig"), std::string("isis")).size() == family);
}

TEST_CASE("corpus: architecture dimensions equal the pinned values") {
  const auto table = ixp::scoreIxpArchitectures(corpusCatalog(), testing::sourceDir() / "profiles", {});
  REQUIRE(table.rows.size() == 9);
  for (const auto& row : table.rows) {
    CAPTURE(row.profile.name);
    CHECK(row.delta == pinned()["architectureDelta"][row.profile.name].get<std::uint64_t>());
  }
  CHECK(table.rows[0].score.render() == "1.00");
}
