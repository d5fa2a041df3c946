// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "oplex/params.hpp"
#include "support.hpp"

using namespace oplex;
using testing::recordsOf;

namespace {

std::vector<std::string> ancestry(const ParameterRecord& r) {
  std::vector<std::string> out;
  for (const auto& p : r.listAncestry) out.push_back(p.str());
  return out;
}

const ParameterRecord& byPath(const std::vector<ParameterRecord>& recs, const std::string& path) {
  for (const auto& r : recs) {
    if (r.path.str() == path) return r;
  }
  FAIL("no record " << path);
  return recs.front();
}

}  // namespace

TEST_CASE("path: parse and print") {
  const auto p = SchemaPath::parse("/a/b:c/d/");
  CHECK(p.size() == 3);
  CHECK(p.str() == "a/b:c/d");
  CHECK(SchemaPath::parse("a/b").isStrictPrefixOf(p) == false);
  CHECK(SchemaPath::parse("a/b:c").isStrictPrefixOf(p));
  CHECK_FALSE(p.isStrictPrefixOf(p));
}

TEST_CASE("extract: container with one leaf") {
  const auto recs = recordsOf({"module m { prefix m; container c { leaf a { type string; } } }"}, "m");
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].path.str() == "c/a");
  CHECK(recs[0].kind == ParamKind::Leaf);
  CHECK(recs[0].listAncestry.empty());
  CHECK(recs[0].module == "m");
  CHECK(recs[0].vendor == "test");
}

TEST_CASE("extract: nested lists give cumulative ancestry") {
  const auto recs = recordsOf({"module m { prefix m; list A { key k; leaf k { type string; } "
                               "list B { key j; leaf j { type string; } leaf-list y { type string; } } } }"},
                              "m");
  REQUIRE(recs.size() == 3);
  CHECK(ancestry(byPath(recs, "A/k")) == std::vector<std::string>{"A"});
  CHECK(ancestry(byPath(recs, "A/B/j")) == std::vector<std::string>{"A", "A/B"});
  const auto& y = byPath(recs, "A/B/y");
  CHECK(ancestry(y) == std::vector<std::string>{"A", "A/B"});
  CHECK(y.kind == ParamKind::LeafList);
}

TEST_CASE("extract: choice and case appear as path segments") {
  const auto recs = recordsOf({"module m { prefix m; container c { choice ch { case k { leaf x { type string; } } } } }"}, "m");
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].path.str() == "c/ch/k/x");
}

TEST_CASE("extract: augmented nodes carry a module prefix and belong to the augmenter") {
  const std::string base = "module base { prefix b; container top { leaf own { type string; } } }";
  const std::string ext = "module ext { prefix e; import base { prefix b; } augment /b:top { leaf-list more { type string; } } }";
  const auto set = testing::moduleSet({base, ext});
  auto res = extractModuleSet(set, {"base", "ext"}, "v");
  REQUIRE(res.recordsByModule["base"].size() == 1);
  REQUIRE(res.recordsByModule["ext"].size() == 1);
  CHECK(res.recordsByModule["ext"][0].path.str() == "top/ext:more");
  CHECK(res.recordsByModule["ext"][0].kind == ParamKind::LeafList);
}

TEST_CASE("extract: config flag follows the schema") {
  const auto recs = recordsOf({"module m { prefix m; container c { leaf rw { type string; } "
                               "container state { config false; leaf ro { type string; } } } }"},
                              "m");
  CHECK(byPath(recs, "c/rw").config);
  CHECK_FALSE(byPath(recs, "c/state/ro").config);
}

TEST_CASE("extract: record count equals an independent node tally") {
  const auto dir = testing::corpusDir();
  std::vector<std::string> paths;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.path().extension() == ".yang") paths.push_back(e.path().string());
  }
  for (const auto& e : std::filesystem::directory_iterator(dir / "deps")) paths.push_back(e.path().string());
  const auto full = schema::loadModuleSet(paths, 4);
  for (const char* m : {"openconfig-interfaces", "openconfig-bgp", "openconfig-system"}) {
    const auto tree = schema::resolve(full, m).root;
    std::size_t tally = 0;
    std::vector<const schema::SchemaNode*> stack{&tree};
    while (!stack.empty()) {
      const auto* n = stack.back();
      stack.pop_back();
      if (n->kind == schema::NodeKind::Leaf || n->kind == schema::NodeKind::LeafList) ++tally;
      for (const auto& c : n->children) stack.push_back(&c);
    }
    CHECK(extract(tree, "v").size() == tally);
  }
}

TEST_CASE("compareRecords: multiset difference") {
  ParameterRecord a{SchemaPath::parse("x/a"), ParamKind::Leaf, {}, "m", "v", true};
  ParameterRecord b{SchemaPath::parse("x/b"), ParamKind::Leaf, {}, "m", "v", true};
  ParameterRecord bOther = b;
  bOther.config = false;  // not part of the comparison key
  CHECK(compareRecords({a, b}, {bOther, a}).empty());
  const auto mm = compareRecords({a, a, b}, {a});
  REQUIRE(mm.size() == 2);
  CHECK(mm[0].key.path == "x/a");
  CHECK(mm[0].delta == 1);
  CHECK(mm[1].delta == 1);
  CHECK(compareRecords({}, {b})[0].delta == -1);
}
