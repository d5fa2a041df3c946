// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <random>

#include "doctest.h"
#include "oplex/yang_parser.hpp"
#include "support.hpp"

using namespace oplex;
using namespace oplex::yang;

namespace {

std::vector<std::string> texts(const std::vector<Token>& toks) {
  std::vector<std::string> out;
  for (const auto& t : toks) out.push_back(t.text);
  return out;
}

ErrorCode codeOf(const std::string& src) {
  try {
    parseSource(src, "t.yang");
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Io;
}

// Statement counter written against the raw text: every statement ends in
// ';' or '{' outside strings and comments.
std::size_t countStatements(const std::string& s) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '/' && i + 1 < s.size() && s[i + 1] == '/') {
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (c == '/' && i + 1 < s.size() && s[i + 1] == '*') {
      i = s.find("*/", i + 2) + 1;
    } else if (c == '"') {
      for (++i; s[i] != '"'; ++i) {
        if (s[i] == '\\') ++i;
      }
    } else if (c == '\'') {
      i = s.find('\'', i + 1);
    } else if (c == ';' || c == '{') {
      ++n;
    }
  }
  return n;
}

std::vector<std::filesystem::path> corpusFiles() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(testing::corpusDir())) {
    if (e.path().extension() == ".yang") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("tokenizer: minimal statement") {
  const auto toks = tokenize("leaf mtu;", "t");
  REQUIRE(toks.size() == 3);
  CHECK(texts(toks) == std::vector<std::string>{"leaf", "mtu", ";"});
  CHECK(toks[2].kind == TokenKind::Semicolon);
  CHECK(toks[1].column == 6);
}

TEST_CASE("tokenizer: concatenation of quoted strings") {
  const auto toks = tokenize("description \"a\" + \"b\";", "t");
  CHECK(texts(toks) == std::vector<std::string>{"description", "ab", ";"});
  CHECK(toks[1].quoted);
  CHECK(texts(tokenize("d 'x' +\n  \"y\" + 'z';", "t"))[1] == "xyz");
}

TEST_CASE("tokenizer: multi-line double-quoted string is trimmed to the quote column") {
  // Opening quote sits in column 14 (zero-based), so continuation lines
  // lose up to 15 columns of leading whitespace. Trailing spaces before a
  // newline go.
  const std::string src =
      "  description \"first line   \n"
      "               second line\n"
      "                 indented more\";\n";
  const auto toks = tokenize(src, "t");
  REQUIRE(toks.size() == 3);
  CHECK(toks[1].text == "first line\nsecond line\n  indented more");
}

TEST_CASE("tokenizer: trimming counts a tab as eight columns") {
  const auto toks = tokenize("d \"a\n\t  b\";", "t");  // strip 3 of the 10 columns
  CHECK(toks[1].text == "a\n       b");
}

TEST_CASE("tokenizer: escapes") {
  CHECK(tokenize(R"(d "a\nb\t\"c\\";)", "t")[1].text == "a\nb\t\"c\\");
  CHECK(tokenize(R"(d 'no \n escape';)", "t")[1].text == "no \\n escape");
  CHECK(codeOf(R"(module m { d "bad \q"; })") == ErrorCode::InvalidEscape);
}

TEST_CASE("tokenizer: comments are skipped, not inside strings") {
  const auto toks = tokenize("// line\nleaf /* block\n */ x; d \"// kept\";", "t");
  CHECK(texts(toks) == std::vector<std::string>{"leaf", "x", ";", "d", "// kept", ";"});
}

TEST_CASE("tokenizer: lexical errors carry positions") {
  try {
    tokenize("leaf x;\n d \"open", "f.yang");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnterminatedString);
    CHECK(e.pos().file == "f.yang");
    CHECK(e.pos().line == 2);
  }
  CHECK(codeOf("module m { /* never closed") == ErrorCode::UnterminatedComment);
  CHECK(codeOf(std::string("module m { d \"\xff\"; }")) == ErrorCode::InvalidUtf8);
  CHECK(codeOf("") == ErrorCode::EmptyInput);
}

TEST_CASE("tokenizer: leading byte-order mark is ignored") {
  CHECK(texts(tokenize("\xEF\xBB\xBFleaf a;", "t"))[0] == "leaf");
}

TEST_CASE("parser: smallest module") {
  const auto root = parseSource("module m { namespace \"n\"; prefix p; }", "t");
  CHECK(root.keyword == "module");
  CHECK(root.arg() == "m");
  REQUIRE(root.children.size() == 2);
  CHECK(root.children[1].keyword == "prefix");
  CHECK(root.statementCount() == 3);
}

TEST_CASE("parser: nested statement") {
  const auto root = parseSource("module m { leaf x { type string; } }", "t");
  const auto* leaf = root.findChild("leaf");
  REQUIRE(leaf);
  CHECK(leaf->arg() == "x");
  REQUIRE(leaf->children.size() == 1);
  CHECK(leaf->children[0].keyword == "type");
  CHECK(leaf->children[0].arg() == "string");
  CHECK(leaf->location.line == 1);
}

TEST_CASE("parser: extension keywords are kept opaque") {
  const auto root = parseSource("module m { oc-ext:regexp-posix; ext:x \"a\" { y; } }", "t");
  CHECK(root.children.size() == 2);
  CHECK(root.children[1].keyword == "ext:x");
  CHECK(root.children[1].children[0].keyword == "y");
}

TEST_CASE("parser: structural errors") {
  CHECK(codeOf("module m { leaf x; ") == ErrorCode::UnexpectedToken);
  CHECK(codeOf("module m { } }") == ErrorCode::UnexpectedToken);
  CHECK(codeOf("module a { } module b { }") == ErrorCode::MultipleRoots);
  CHECK(codeOf("container c { }") == ErrorCode::UnexpectedToken);
  CHECK(codeOf("module m { ; }") == ErrorCode::UnexpectedToken);
}

TEST_CASE("parser: unbalanced braces name file and line") {
  try {
    parseSource("module m {\n  container c {\n    leaf x { type string; }\n", "broken.yang");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnexpectedToken);
    CHECK(std::string(e.what()).find("broken.yang:") == 0);
    CHECK(e.pos().line >= 1);
  }
}

TEST_CASE("corpus: statement counts match an independent counter") {
  const auto files = corpusFiles();
  REQUIRE(files.size() == 91);
  for (const auto& f : files) {
    CAPTURE(f);
    CHECK(parseFile(f.string()).statementCount() == countStatements(testing::readText(f)));
  }
}

TEST_CASE("corpus: canonical serialization round-trips") {
  for (const auto& f : corpusFiles()) {
    CAPTURE(f);
    const auto a = parseFile(f.string());
    const auto b = parseSource(toCanonicalYang(a), "canonical");
    CHECK(structurallyEqual(a, b));
  }
}

TEST_CASE("round-trip over random argument strings") {
  std::mt19937 rng(7);
  const std::string alphabet = "ab \t\n\"\\'{};/*+xyz";
  for (int i = 0; i < 300; ++i) {
    RawStatement root{"module", "m", {}, {}};
    const int kids = std::uniform_int_distribution<int>(0, 5)(rng);
    for (int k = 0; k < kids; ++k) {
      std::string arg;
      const int len = std::uniform_int_distribution<int>(0, 12)(rng);
      for (int j = 0; j < len; ++j) arg += alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
      root.children.push_back(RawStatement{"description", arg, {}, {}});
    }
    const auto text = toCanonicalYang(root);
    CAPTURE(text);
    CHECK(structurallyEqual(root, parseSource(text, "rt")));
  }
}

TEST_CASE("fuzz: mutated corpus text either parses or raises a positioned Error") {
  const auto files = corpusFiles();
  std::mt19937 rng(11);
  const std::string junk = "{};\"'/*+\\ \n\xc3\xff";
  for (int i = 0; i < 400; ++i) {
    std::string text = testing::readText(files[i % files.size()]);
    const int edits = std::uniform_int_distribution<int>(1, 6)(rng);
    for (int e = 0; e < edits && !text.empty(); ++e) {
      const auto pos = std::uniform_int_distribution<std::size_t>(0, text.size() - 1)(rng);
      switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
        case 0: text.erase(pos, std::uniform_int_distribution<std::size_t>(1, 40)(rng)); break;
        case 1: text.insert(pos, 1, junk[std::uniform_int_distribution<std::size_t>(0, junk.size() - 1)(rng)]); break;
        default: text.resize(pos); break;
      }
    }
    try {
      parseSource(text, "fuzz.yang");
    } catch (const Error& e) {
      CHECK(e.pos().file == "fuzz.yang");
    }
  }
}
