// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

// Lexer and parser for the RFC 7950 generic statement grammar:
//
//   statement = keyword [argument] (";" / "{" *statement "}")
//
// No keyword whitelist is applied, so vendor extensions survive as opaque
// statements with their subtrees intact.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oplex/error.hpp"

namespace oplex::yang {

enum class TokenKind : std::uint8_t { String, LeftBrace, RightBrace, Semicolon };

struct Token {
  TokenKind kind = TokenKind::String;
  std::string text;  // unescaped; "+"-concatenation already applied
  std::uint32_t line = 1;
  std::uint32_t column = 1;
  bool quoted = false;

  bool operator==(const Token&) const = default;
};

struct SourceLocation {
  std::shared_ptr<const std::string> file;
  std::uint32_t line = 0;
  std::uint32_t column = 0;

  std::string fileName() const { return file ? *file : std::string(); }
};

struct RawStatement {
  std::string keyword;
  std::optional<std::string> argument;
  std::vector<RawStatement> children;
  SourceLocation location;

  const std::string& arg() const;  // empty string when absent

  const RawStatement* findChild(std::string_view keyword) const;
  std::vector<const RawStatement*> childrenNamed(std::string_view keyword) const;
  std::size_t statementCount() const;  // this statement plus all descendants
};

std::vector<Token> tokenize(std::string_view source, std::string_view fileName);

RawStatement parse(const std::vector<Token>& tokens, std::string_view fileName);

inline RawStatement parseSource(std::string_view source,
                                std::string_view fileName) {
  return parse(tokenize(source, fileName), fileName);
}

RawStatement parseFile(const std::string& path);

/// Canonical serialization: every argument double-quoted with \n, \t,
/// \" and \\ escaped, two-space indentation. Re-parsing the output yields a
/// structurally identical tree.
std::string toCanonicalYang(const RawStatement& stmt);

/// Keyword, argument and child order equality; locations are ignored.
bool structurallyEqual(const RawStatement& a, const RawStatement& b);

}  // namespace oplex::yang
