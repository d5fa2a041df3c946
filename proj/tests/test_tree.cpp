// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "oplex/analyzer.hpp"
#include "oplex/tree_frontend.hpp"
#include "support.hpp"

using namespace oplex;
using namespace oplex::tree;

TEST_CASE("tree: single top-level leaf") {
  const auto recs = parseTreeDiagram("module: m\n  +--rw mtu?   uint16\n", "", "v");
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].path.str() == "mtu");
  CHECK(recs[0].kind == ParamKind::Leaf);
  CHECK(recs[0].listAncestry.empty());
  CHECK(recs[0].module == "m");
}

TEST_CASE("tree: list children carry the list ancestry") {
  const std::string text =
      "module: m\n"
      "  +--rw interface* [name]\n"
      "     +--rw name       string\n"
      "     +--rw enabled?   boolean\n";
  const auto recs = parseTreeDiagram(text, "", "v");
  REQUIRE(recs.size() == 2);
  for (const auto& r : recs) {
    REQUIRE(r.listAncestry.size() == 1);
    CHECK(r.listAncestry[0].str() == "interface");
  }
}

TEST_CASE("tree: markers, flags and skipped sections") {
  const std::string text =
      "module: m\n"
      "  +--rw top\n"
      "  |  +--ro counters\n"
      "  |  |  +--ro in?   uint64\n"
      "  |  +--rw tags*   string\n"
      "  |  +--rw (mode)?\n"
      "  |     +--:(fast)\n"
      "  |        +--rw speed?   uint32\n"
      "  +--rw blob?    <anydata>\n"
      "\n"
      "  rpcs:\n"
      "    +---x reset\n"
      "       +---w input\n"
      "          +---w force?   boolean\n"
      "\n"
      "  notifications:\n"
      "    +---n changed\n"
      "       +--ro what?   string\n";
  const auto d = parseTreeText(text, "t");
  CHECK(d.module == "m");
  REQUIRE(d.sections.size() == 3);
  CHECK(d.sections[1].kind == TreeSection::Kind::Skipped);
  CHECK(d.sections[0].lines[3].marker == NodeMarker::LeafList);
  CHECK(d.sections[0].lines[4].marker == NodeMarker::Choice);
  CHECK(d.sections[0].lines[5].marker == NodeMarker::Case);

  const auto recs = recordsFromDiagram(d, "m", "v");
  REQUIRE(recs.size() == 3);
  CHECK(recs[0].path.str() == "top/counters/in");
  CHECK_FALSE(recs[0].config);
  CHECK(recs[1].kind == ParamKind::LeafList);
  CHECK(recs[2].path.str() == "top/mode/fast/speed");
}

TEST_CASE("tree: augment sections resolve prefixes through the context") {
  const std::string base = "module: base\n  +--rw top\n     +--rw item* [n]\n        +--rw n    string\n";
  const std::string ext =
      "module: ext\n"
      "\n"
      "  augment /b:top/b:item:\n"
      "    +--rw extra?   string\n";
  TreeContext ctx;
  ctx.prefixesByModule["ext"] = {{"b", "base"}, {"e", "ext"}};
  ctx.addLists(parseTreeText(base, "base"));
  const auto recs = parseTreeDiagram(ext, "", "v", &ctx);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].path.str() == "top/item/ext:extra");
  REQUIRE(recs[0].listAncestry.size() == 1);
  CHECK(recs[0].listAncestry[0].str() == "top/item");
}

TEST_CASE("tree: errors") {
  try {
    parseTreeText("module: m\n  +--rw a\n  garbage here\n", "bad.tree");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedTreeLine);
    CHECK(e.pos().line == 3);
  }
  try {
    parseTreeText("  \n\n", "empty.tree");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyDiagram);
  }
}

TEST_CASE("corpus: openconfig-interfaces tree matches the native pipeline") {
  const auto dir = testing::corpusDir();
  const auto native = analyzer::analyzeYang({dir.string()}, "openconfig", {{(dir / "deps").string()}, 4, {}});
  analyzer::TreeOptions topts;
  topts.prefixSources = {dir.string(), (dir / "deps").string()};
  const auto tree = analyzer::analyzeTrees({testing::treeDir().string()}, "openconfig", topts);
  const auto& n = native.modules.at("openconfig-interfaces").records;
  const auto& t = tree.modules.at("openconfig-interfaces").records;
  CHECK(n.size() == 60);
  CHECK(compareRecords(n, t).empty());
}
