// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "oplex/schema.hpp"
#include "support.hpp"

using namespace oplex;
using namespace oplex::schema;
using testing::moduleSet;

namespace {

ErrorCode resolveError(const std::vector<std::string>& sources, const std::string& target) {
  try {
    resolve(moduleSet(sources), target);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Io;
}

std::size_t countKind(const SchemaNode& n, NodeKind k) {
  std::size_t c = n.kind == k ? 1 : 0;
  for (const auto& ch : n.children) c += countKind(ch, k);
  return c;
}

void collectOrigins(const SchemaNode& n, std::map<std::string, std::size_t>& out) {
  if (n.kind == NodeKind::Leaf || n.kind == NodeKind::LeafList) ++out[n.originModule];
  for (const auto& c : n.children) collectOrigins(c, out);
}

}  // namespace

TEST_CASE("resolve: container with one leaf") {
  const auto r = resolve(moduleSet({"module a { prefix a; container c { leaf x { type string; } } }"}), "a");
  REQUIRE(r.root.children.size() == 1);
  CHECK(r.root.children[0].kind == NodeKind::Container);
  CHECK(r.root.children[0].children[0].kind == NodeKind::Leaf);
  CHECK(countKind(r.root, NodeKind::Leaf) == 1);
}

TEST_CASE("resolve: uses expands a grouping in the using module's namespace") {
  const auto r = resolve(moduleSet({"module a { prefix a; grouping g { leaf x { type int8; } } container c { uses g; } }"}), "a");
  const auto* x = r.root.child("a", "c")->child("a", "x");
  REQUIRE(x);
  CHECK(x->originModule == "a");
}

TEST_CASE("resolve: imported grouping and nested uses") {
  const std::string b = "module b { prefix b; grouping inner { leaf y { type string; } } "
                        "grouping outer { container box { uses inner; } leaf z { type string; } } }";
  const std::string a = "module a { prefix a; import b { prefix bb; } container c { uses bb:outer; } }";
  const auto r = resolve(moduleSet({a, b}), "a");
  const auto* c = r.root.child("a", "c");
  REQUIRE(c);
  CHECK(c->child("a", "z"));
  REQUIRE(c->child("a", "box"));
  CHECK(c->child("a", "box")->child("a", "y")->originModule == "a");
}

TEST_CASE("resolve: local grouping scope shadows module scope") {
  const std::string a = "module a { prefix a; grouping g { leaf outer { type string; } } "
                        "container c { grouping g { leaf inner { type string; } } uses g; } }";
  const auto r = resolve(moduleSet({a}), "a");
  CHECK(r.root.child("a", "c")->child("a", "inner"));
  CHECK_FALSE(r.root.child("a", "c")->child("a", "outer"));
}

TEST_CASE("resolve: refine changes config and description only") {
  const std::string a = "module a { prefix a; grouping g { container s { leaf v { type string; } } } "
                        "container c { uses g { refine s/v { config false; description \"new\"; default 3; } } } }";
  const auto r = resolve(moduleSet({a}), "a");
  const auto* v = r.root.child("a", "c")->child("a", "s")->child("a", "v");
  REQUIRE(v);
  CHECK_FALSE(v->config);
  CHECK(v->description == std::optional<std::string>("new"));
}

TEST_CASE("resolve: config false is inherited") {
  const auto r = resolve(moduleSet({"module a { prefix a; container c { config false; container d { leaf x { type string; } } } }"}), "a");
  CHECK_FALSE(r.root.child("a", "c")->child("a", "d")->child("a", "x")->config);
}

TEST_CASE("resolve: shorthand choice members get an implicit case") {
  const std::string a = "module a { prefix a; container c { choice ch { leaf one { type string; } "
                        "case two { leaf t { type string; } } } } }";
  const auto r = resolve(moduleSet({a}), "a");
  const auto* ch = r.root.child("a", "c")->child("a", "ch");
  REQUIRE(ch);
  CHECK(ch->kind == NodeKind::Choice);
  REQUIRE(ch->children.size() == 2);
  CHECK(ch->children[0].kind == NodeKind::Case);
  CHECK(ch->children[0].name == "one");
  CHECK(ch->children[0].children[0].kind == NodeKind::Leaf);
  CHECK(ch->children[1].name == "two");
}

TEST_CASE("resolve: cross-module augment is attributed to the augmenting module") {
  const std::string base = "module base { prefix b; container top { list item { key n; leaf n { type string; } } } }";
  const std::string ext = "module ext { prefix e; import base { prefix b; } "
                          "augment \"/b:top/b:item\" { leaf extra { type string; } } }";
  const auto set = moduleSet({base, ext});
  const auto r = resolve(set, "base");
  const auto* extra = r.root.child("base", "top")->child("base", "item")->child("ext", "extra");
  REQUIRE(extra);
  CHECK(extra->originModule == "ext");
  CHECK(r.diagnostics.empty());
}

TEST_CASE("resolve: augment inside uses targets the expanded grouping") {
  const std::string a = "module a { prefix a; grouping g { container s { } } "
                        "container c { uses g { augment s { leaf added { type string; } } } } }";
  const auto r = resolve(moduleSet({a}), "a");
  CHECK(r.root.child("a", "c")->child("a", "s")->child("a", "added"));
}

TEST_CASE("resolve: unresolved augment target is a warning") {
  const std::string base = "module base { prefix b; container top { } }";
  const std::string ext = "module ext { prefix e; import base { prefix b; } augment \"/b:nope\" { leaf x { type string; } } }";
  const auto r = resolve(moduleSet({base, ext}), "base");
  REQUIRE(r.diagnostics.size() == 1);
  CHECK(r.diagnostics[0].kind == DiagnosticKind::UnresolvedAugmentTarget);
  CHECK(r.diagnostics[0].module == "ext");
}

TEST_CASE("resolve: rpc, notification and anydata are not data parameters") {
  const std::string a = "module a { prefix a; rpc r { input { leaf i { type string; } } } "
                        "notification n { leaf m { type string; } } container c { anydata blob; leaf k { type string; } } }";
  const auto r = resolve(moduleSet({a}), "a");
  CHECK(countKind(r.root, NodeKind::Leaf) == 1);
  REQUIRE(r.diagnostics.size() == 1);
  CHECK(r.diagnostics[0].kind == DiagnosticKind::OpaqueDataNode);
}

TEST_CASE("resolve: submodule content joins the parent namespace") {
  const std::string parent = "module p { prefix p; include s; container c { uses sg; } }";
  const std::string sub = "submodule s { belongs-to p { prefix p; } grouping sg { leaf x { type string; } } "
                          "container d { leaf y { type string; } } }";
  const auto r = resolve(moduleSet({parent, sub}), "p");
  CHECK(r.root.child("p", "c")->child("p", "x"));
  CHECK(r.root.child("p", "d")->child("p", "y")->originModule == "p");
}

TEST_CASE("resolve: errors") {
  CHECK(resolveError({"module a { prefix a; container c { uses missing; } }"}, "a") == ErrorCode::UnresolvedGrouping);
  CHECK(resolveError({"module a { prefix a; grouping g { uses h; } grouping h { uses g; } container c { uses g; } }"}, "a") ==
        ErrorCode::CircularGrouping);
  CHECK(resolveError({"module a { prefix a; include nowhere; }"}, "a") == ErrorCode::MissingInclude);
  CHECK(resolveError({"module a { prefix a; }"}, "zzz") == ErrorCode::UnknownModule);
  CHECK(resolveError({"module a { prefix a; container c { uses x:g; } }"}, "a") == ErrorCode::UnresolvedGrouping);
}

TEST_CASE("module set: empty input and duplicates") {
  CHECK(loadModuleSet({}).modules.empty());
  try {
    moduleSet({"module foo { prefix f; }", "module foo { prefix g; }"});
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DuplicateModule);
  }
}

TEST_CASE("if-feature: expressions and pruning") {
  const std::set<std::string> on{"a", "b"};
  CHECK(evaluateIfFeature("a", on));
  CHECK_FALSE(evaluateIfFeature("c", on));
  CHECK(evaluateIfFeature("p:a and not c", on));
  CHECK(evaluateIfFeature("c or (a and b)", on));
  CHECK_FALSE(evaluateIfFeature("not (a or c)", on));

  const std::string src = "module a { prefix a; feature f; container c { leaf x { if-feature f; type string; } leaf y { type string; } } }";
  CHECK(countKind(resolve(moduleSet({src}), "a").root, NodeKind::Leaf) == 2);
  ResolveOptions opts;
  opts.features = std::set<std::string>{};
  CHECK(countKind(resolve(moduleSet({src}), "a", opts).root, NodeKind::Leaf) == 1);
  opts.features = std::set<std::string>{"f"};
  CHECK(countKind(resolve(moduleSet({src}), "a", opts).root, NodeKind::Leaf) == 2);
}

TEST_CASE("resolve is idempotent") {
  const auto set = moduleSet({"module a { prefix a; grouping g { leaf x { type string; } } list l { key x; uses g; } }"});
  CHECK(resolve(set, "a").root == resolve(set, "a").root);
}

TEST_CASE("corpus: augmenting companions add leaves attributed to themselves") {
  const auto dir = testing::corpusDir();
  const std::vector<std::string> alone{(dir / "openconfig-interfaces.yang").string(),
                                       (dir / "openconfig-extensions.yang").string(),
                                       (dir / "openconfig-types.yang").string(),
                                       (dir / "openconfig-yang-types.yang").string(),
                                       (dir / "deps" / "ietf-interfaces.yang").string(),
                                       (dir / "deps" / "ietf-yang-types.yang").string()};
  std::vector<std::string> withCompanions = alone;
  for (const char* m : {"openconfig-if-ethernet", "openconfig-vlan", "openconfig-if-aggregate", "openconfig-if-types",
                        "openconfig-vlan-types", "openconfig-if-ip", "openconfig-inet-types", "openconfig-lacp"}) {
    withCompanions.push_back((dir / (std::string(m) + ".yang")).string());
  }
  withCompanions.push_back((dir / "deps" / "iana-if-type.yang").string());
  withCompanions.push_back((dir / "deps" / "ietf-inet-types.yang").string());

  const auto small = resolve(loadModuleSet(alone), "openconfig-interfaces");
  const auto big = resolve(loadModuleSet(withCompanions), "openconfig-interfaces");
  std::map<std::string, std::size_t> smallOrigins, bigOrigins;
  collectOrigins(small.root, smallOrigins);
  collectOrigins(big.root, bigOrigins);
  CHECK(countKind(big.root, NodeKind::Leaf) > countKind(small.root, NodeKind::Leaf));
  CHECK(smallOrigins.size() == 1);
  CHECK(bigOrigins["openconfig-interfaces"] == smallOrigins["openconfig-interfaces"]);
  CHECK(bigOrigins["openconfig-if-ethernet"] > 0);
  CHECK(bigOrigins["openconfig-vlan"] > 0);
}
