// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

#include "oplex/yang_parser.hpp"

#include <fstream>
#include <sstream>

namespace oplex::yang {

namespace {

constexpr int kTabWidth = 8;  // tab expansion used by RFC 7950 string trimming

bool isSpace(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

// Returns the byte offset of the first byte that breaks UTF-8 well-formedness,
// or npos.
std::size_t findInvalidUtf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    std::uint32_t min = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      min = 0x80;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      min = 0x800;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      min = 0x10000;
    } else {
      return i;
    }
    if (i + len > s.size()) return i;
    std::uint32_t cp = c & (0xFF >> (len + 1));
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return i;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return i;
    i += len;
  }
  return std::string_view::npos;
}

class Lexer {
 public:
  Lexer(std::string_view src, std::string_view file) : src_(src), file_(file) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skipBlank();
      if (pos_ >= src_.size()) break;
      const char c = src_[pos_];
      Token tok;
      tok.line = line_;
      tok.column = column_;
      if (c == '{' || c == '}' || c == ';') {
        tok.kind = c == '{'   ? TokenKind::LeftBrace
                   : c == '}' ? TokenKind::RightBrace
                              : TokenKind::Semicolon;
        tok.text.assign(1, c);
        advance();
      } else if (c == '"') {
        tok.text = doubleQuoted();
        tok.quoted = true;
      } else if (c == '\'') {
        tok.text = singleQuoted();
        tok.quoted = true;
      } else {
        tok.text = unquoted();
      }
      out.push_back(std::move(tok));
    }
    return concatenate(std::move(out));
  }

 private:
  [[noreturn]] void fail(ErrorCode code, std::string msg, std::uint32_t line,
                         std::uint32_t col) const {
    throw Error(code, std::move(msg), SourcePos{std::string(file_), line, col});
  }

  void advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
      lineStart_ = pos_;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++column_;
    } else {
      // continuation bytes do not start a new column
    }
  }

  bool startsWith(std::string_view s) const {
    return src_.substr(pos_, s.size()) == s;
  }

  void skipBlank() {
    while (pos_ < src_.size()) {
      if (isSpace(src_[pos_])) {
        advance();
      } else if (startsWith("//")) {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (startsWith("/*")) {
        const auto l = line_, col = column_;
        advance();
        advance();
        while (pos_ < src_.size() && !startsWith("*/")) advance();
        if (pos_ >= src_.size()) fail(ErrorCode::UnterminatedComment, "'/*' is never closed", l, col);
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  std::string unquoted() {
    std::string out;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (isSpace(c) || c == '{' || c == '}' || c == ';' || c == '"' || c == '\'') break;
      if (startsWith("//") || startsWith("/*")) break;
      out.push_back(c);
      advance();
    }
    return out;
  }

  std::string singleQuoted() {
    const auto l = line_, col = column_;
    advance();
    std::string out;
    while (pos_ < src_.size() && src_[pos_] != '\'') {
      out.push_back(src_[pos_]);
      advance();
    }
    if (pos_ >= src_.size()) fail(ErrorCode::UnterminatedString, "single-quoted string is never closed", l, col);
    advance();
    return out;
  }

  // Visual column (1-based, tabs expanded to kTabWidth spaces) of pos_.
  int visualColumn() const {
    int col = 1;
    for (std::size_t i = lineStart_; i < pos_; ++i) {
      if (src_[i] == '\t') {
        col += kTabWidth;
      } else if ((static_cast<unsigned char>(src_[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
    return col;
  }

  std::string doubleQuoted() {
    const auto l = line_, col = column_;
    const int indent = visualColumn();  // strip up to and including this column
    advance();
    std::string out;
    std::size_t keep = 0;  // prefix of `out` that trailing-blank trimming may not touch
    while (true) {
      if (pos_ >= src_.size()) fail(ErrorCode::UnterminatedString, "double-quoted string is never closed", l, col);
      const char c = src_[pos_];
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\') {
        const auto el = line_, ec = column_;
        advance();
        if (pos_ >= src_.size()) fail(ErrorCode::UnterminatedString, "double-quoted string is never closed", l, col);
        const char e = src_[pos_];
        switch (e) {
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          case '"': out.push_back('"'); break;
          case '\\': out.push_back('\\'); break;
          default:
            fail(ErrorCode::InvalidEscape, std::string("unknown escape sequence '\\") + e + "'", el, ec);
        }
        advance();
        keep = out.size();
        continue;
      }
      if (c == '\n' || (c == '\r' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '\n')) {
        while (out.size() > keep && (out.back() == ' ' || out.back() == '\t')) out.pop_back();
        if (c == '\r') advance();
        advance();
        out.push_back('\n');
        keep = out.size();
        stripIndent(indent, out);
        continue;
      }
      out.push_back(c);
      advance();
    }
    return out;
  }

  void stripIndent(int indent, std::string& out) {
    int consumed = 0;
    while (pos_ < src_.size() && consumed < indent) {
      const char c = src_[pos_];
      if (c == ' ') {
        ++consumed;
        advance();
      } else if (c == '\t') {
        const int width = kTabWidth;
        advance();
        if (consumed + width > indent) {
          out.append(static_cast<std::size_t>(consumed + width - indent), ' ');
          consumed = indent;
        } else {
          consumed += width;
        }
      } else {
        break;
      }
    }
  }

  static std::vector<Token> concatenate(std::vector<Token> in) {
    std::vector<Token> out;
    out.reserve(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
      if (!out.empty() && out.back().quoted && in[i].kind == TokenKind::String &&
          !in[i].quoted && in[i].text == "+" && i + 1 < in.size() && in[i + 1].quoted) {
        out.back().text += in[i + 1].text;
        ++i;
        continue;
      }
      out.push_back(std::move(in[i]));
    }
    return out;
  }

  std::string_view src_;
  std::string_view file_;
  std::size_t pos_ = 0;
  std::size_t lineStart_ = 0;
  std::uint32_t line_ = 1;
  std::uint32_t column_ = 1;
};

void appendQuoted(std::string& out, const std::string& s) {
  out.push_back('"');
  for (const char c : s) {
    switch (c) {
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
}

void serialize(const RawStatement& s, int depth, std::string& out) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += s.keyword;
  if (s.argument) {
    out.push_back(' ');
    appendQuoted(out, *s.argument);
  }
  if (s.children.empty()) {
    out += ";\n";
    return;
  }
  out += " {\n";
  for (const auto& c : s.children) serialize(c, depth + 1, out);
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += "}\n";
}

}  // namespace

const std::string& RawStatement::arg() const {
  static const std::string kEmpty;
  return argument ? *argument : kEmpty;
}

const RawStatement* RawStatement::findChild(std::string_view kw) const {
  for (const auto& c : children) {
    if (c.keyword == kw) return &c;
  }
  return nullptr;
}

std::vector<const RawStatement*> RawStatement::childrenNamed(std::string_view kw) const {
  std::vector<const RawStatement*> out;
  for (const auto& c : children) {
    if (c.keyword == kw) out.push_back(&c);
  }
  return out;
}

std::size_t RawStatement::statementCount() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c.statementCount();
  return n;
}

std::vector<Token> tokenize(std::string_view source, std::string_view fileName) {
  if (source.substr(0, 3) == "\xEF\xBB\xBF") source.remove_prefix(3);
  if (const auto bad = findInvalidUtf8(source); bad != std::string_view::npos) {
    std::uint32_t line = 1, col = 1;
    for (std::size_t i = 0; i < bad; ++i) {
      if (source[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(source[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
    throw Error(ErrorCode::InvalidUtf8, "input is not valid UTF-8",
                SourcePos{std::string(fileName), line, col});
  }
  return Lexer(source, fileName).run();
}

RawStatement parse(const std::vector<Token>& tokens, std::string_view fileName) {
  auto file = std::make_shared<const std::string>(fileName);
  const auto where = [&](const Token& t) { return SourcePos{*file, t.line, t.column}; };
  if (tokens.empty()) throw Error(ErrorCode::EmptyInput, "no statements found", SourcePos{*file});

  std::optional<RawStatement> root;
  std::vector<RawStatement*> open;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const Token& t = tokens[i];
    if (t.kind == TokenKind::RightBrace) {
      if (open.empty()) throw Error(ErrorCode::UnexpectedToken, "unmatched '}'", where(t));
      open.pop_back();
      ++i;
      continue;
    }
    if (t.kind != TokenKind::String || t.quoted || t.text.empty()) {
      throw Error(ErrorCode::UnexpectedToken, "expected a keyword, found '" + t.text + "'", where(t));
    }
    if (open.empty()) {
      if (root) throw Error(ErrorCode::MultipleRoots, "more than one top-level statement", where(t));
      if (t.text != "module" && t.text != "submodule") {
        throw Error(ErrorCode::UnexpectedToken,
                    "top-level statement must be 'module' or 'submodule', found '" + t.text + "'", where(t));
      }
    }
    RawStatement stmt;
    stmt.keyword = t.text;
    stmt.location = SourceLocation{file, t.line, t.column};
    ++i;
    if (i < tokens.size() && tokens[i].kind == TokenKind::String) {
      stmt.argument = tokens[i].text;
      ++i;
    }
    if (i >= tokens.size()) {
      throw Error(ErrorCode::UnexpectedToken, "statement '" + stmt.keyword + "' is not terminated",
                  where(tokens.back()));
    }
    const Token& term = tokens[i];
    if (term.kind != TokenKind::Semicolon && term.kind != TokenKind::LeftBrace) {
      throw Error(ErrorCode::UnexpectedToken, "expected ';' or '{', found '" + term.text + "'", where(term));
    }
    ++i;
    RawStatement* placed = nullptr;
    if (open.empty()) {
      root = std::move(stmt);
      placed = &*root;
    } else {
      open.back()->children.push_back(std::move(stmt));
      placed = &open.back()->children.back();
    }
    if (term.kind == TokenKind::LeftBrace) open.push_back(placed);
  }
  if (!open.empty()) {
    throw Error(ErrorCode::UnexpectedToken,
                "missing '}' for '" + open.back()->keyword + "' opened at line " +
                    std::to_string(open.back()->location.line),
                where(tokens.back()));
  }
  return std::move(*root);
}

RawStatement parseFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open file", SourcePos{path});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parseSource(ss.str(), path);
}

std::string toCanonicalYang(const RawStatement& stmt) {
  std::string out;
  serialize(stmt, 0, out);
  return out;
}

bool structurallyEqual(const RawStatement& a, const RawStatement& b) {
  if (a.keyword != b.keyword || a.argument != b.argument || a.children.size() != b.children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!structurallyEqual(a.children[i], b.children[i])) return false;
  }
  return true;
}

}  // namespace oplex::yang
