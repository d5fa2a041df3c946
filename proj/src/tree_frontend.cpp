// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

#include "oplex/tree_frontend.hpp"

#include <optional>

namespace oplex::tree {

std::string_view nodeMarkerName(NodeMarker m) noexcept {
  switch (m) {
    case NodeMarker::Container: return "container";
    case NodeMarker::List: return "list";
    case NodeMarker::Leaf: return "leaf";
    case NodeMarker::LeafList: return "leaf-list";
    case NodeMarker::Choice: return "choice";
    case NodeMarker::Case: return "case";
    case NodeMarker::Other: return "other";
  }
  return "?";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

struct PendingLine {
  TreeLine line;
  std::string rest;  // text after the name token
};

class TextParser {
 public:
  TextParser(std::string_view text, std::string_view source) : text_(text), source_(source) {}

  TreeDiagram run() {
    std::size_t start = 0;
    std::uint32_t number = 0;
    bool any = false;
    while (start <= text_.size()) {
      const auto nl = text_.find('\n', start);
      const auto end = nl == std::string_view::npos ? text_.size() : nl;
      ++number;
      std::string_view line = text_.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (!trim(line).empty()) {
        any = true;
        handle(line, number);
      }
      if (nl == std::string_view::npos) break;
      start = nl + 1;
    }
    if (!any) fail("diagram is empty", 0, ErrorCode::EmptyDiagram);
    if (pendingHeader_) fail("unterminated section header", headerLine_);
    closeSection();
    return std::move(diagram_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::uint32_t line,
                         ErrorCode code = ErrorCode::MalformedTreeLine) const {
    throw Error(code, msg, SourcePos{std::string(source_), line, 0});
  }

  void handle(std::string_view line, std::uint32_t number) {
    std::size_t indent = 0;
    while (indent < line.size() && line[indent] == ' ') ++indent;

    if (pendingHeader_) {
      *pendingHeader_ += std::string(trim(line));
      if (pendingHeader_->back() == ':') finishHeader();
      return;
    }
    if (indent == 0) {
      const auto body = trim(line);
      for (const std::string_view kw : {"module:", "submodule:"}) {
        if (body.substr(0, kw.size()) == kw) {
          if (!diagram_.module.empty()) fail("more than one module in a diagram", number);
          diagram_.module = std::string(trim(body.substr(kw.size())));
          diagram_.submodule = kw == "submodule:";
          openSection(TreeSection::Kind::Data, {}, {}, 2);
          return;
        }
      }
      fail("expected 'module:' header, found '" + std::string(body) + "'", number);
    }
    if (diagram_.module.empty()) fail("node line before the 'module:' header", number);

    const auto marker = line.find("+--");
    const bool onlyBars = marker != std::string_view::npos &&
                          line.substr(0, marker).find_first_not_of(" |") == std::string_view::npos;
    if (indent == 2 && line[2] != '+' && line[2] != '|') {
      pendingHeader_ = std::string(trim(line));
      headerLine_ = number;
      if (pendingHeader_->back() == ':') finishHeader();
      return;
    }
    if (!onlyBars) {
      // wrapped continuation of the previous node line
      if (pending_.empty()) fail("continuation line without a node line", number);
      const auto pos = line.find_first_not_of(" |");
      pending_.back().rest += ' ';
      pending_.back().rest += std::string(trim(line.substr(pos)));
      pending_.back().line.rawText += '\n';
      pending_.back().line.rawText += std::string(line);
      return;
    }
    nodeLine(line, marker, number);
  }

  void finishHeader() {
    std::string h = *pendingHeader_;
    pendingHeader_.reset();
    h.pop_back();  // ':'
    if (h.rfind("augment ", 0) == 0) {
      openSection(TreeSection::Kind::Augment, h, std::string(trim(std::string_view(h).substr(8))), 4);
      return;
    }
    for (const std::string_view kw :
         {"rpcs", "notifications", "grouping ", "yang-data ", "structure ", "augment-structure "}) {
      if (h.rfind(kw, 0) == 0) {
        openSection(TreeSection::Kind::Skipped, h, {}, 4);
        return;
      }
    }
    fail("unknown section header '" + h + "'", headerLine_);
  }

  void openSection(TreeSection::Kind kind, std::string header, std::string target, std::size_t base) {
    closeSection();
    TreeSection s;
    s.kind = kind;
    s.header = std::move(header);
    s.augmentTarget = std::move(target);
    diagram_.sections.push_back(std::move(s));
    base_ = base;
  }

  void nodeLine(std::string_view line, std::size_t marker, std::uint32_t number) {
    if (diagram_.sections.empty()) fail("node line outside a section", number);
    if (marker < base_ || (marker - base_) % 3 != 0) fail("indentation does not match the tree layout", number);
    PendingLine p;
    p.line.depth = static_cast<int>((marker - base_) / 3);
    p.line.lineNumber = number;
    p.line.rawText = std::string(line);
    const int prevDepth = pending_.empty() ? -1 : pending_.back().line.depth;
    if (p.line.depth > prevDepth + 1) fail("node is nested more than one level below its parent", number);

    std::string_view body = line.substr(marker + 3);
    if (body.substr(0, 2) == ":(") {
      const auto close = body.find(')');
      if (close == std::string_view::npos) fail("unterminated case name", number);
      p.line.marker = NodeMarker::Case;
      p.line.name = std::string(body.substr(2, close - 2));
      p.rest = std::string(trim(body.substr(close + 1)));
    } else {
      const auto sp = body.find(' ');
      if (sp == std::string_view::npos) fail("missing node name", number);
      p.line.flags = std::string(body.substr(0, sp));
      body = trim(body.substr(sp));
      const auto nameEnd = body.find_first_of(" \t");
      std::string_view token = body.substr(0, nameEnd);
      p.rest = nameEnd == std::string_view::npos ? std::string() : std::string(trim(body.substr(nameEnd)));
      if (token.empty()) fail("missing node name", number);
      if (token.front() == '(') {
        const auto close = token.find(')');
        if (close == std::string_view::npos) fail("unterminated choice name", number);
        p.line.marker = NodeMarker::Choice;
        p.line.name = std::string(token.substr(1, close - 1));
      } else {
        while (!token.empty() && std::string_view("?*!/@").find(token.back()) != std::string_view::npos) {
          if (token.back() == '*') p.line.starred = true;
          token.remove_suffix(1);
        }
        if (token.empty()) fail("missing node name", number);
        p.line.name = std::string(token);
        p.line.marker = NodeMarker::Container;  // refined once children are known
        if (p.line.flags == "-x" || p.line.flags == "-n" || p.line.flags == "-u") {
          p.line.marker = NodeMarker::Other;
        }
      }
    }
    pending_.push_back(std::move(p));
  }

  void closeSection() {
    if (diagram_.sections.empty()) return;
    auto& section = diagram_.sections.back();
    for (std::size_t i = 0; i < pending_.size(); ++i) {
      auto& p = pending_[i];
      const bool hasChildren = i + 1 < pending_.size() && pending_[i + 1].line.depth > p.line.depth;
      std::string_view rest = p.rest;
      if (p.line.starred && !rest.empty() && rest.front() == '[') {
        const auto close = rest.find(']');
        rest = close == std::string_view::npos ? std::string_view() : trim(rest.substr(close + 1));
      }
      if (!rest.empty() && rest.front() != '{') p.line.type = std::string(rest.substr(0, rest.find(' ')));
      auto& m = p.line.marker;
      if (m == NodeMarker::Container) {
        if (p.line.starred) {
          m = hasChildren || p.line.type.empty() ? NodeMarker::List : NodeMarker::LeafList;
        } else if (!hasChildren && !p.line.type.empty()) {
          m = p.line.type == "anydata" || p.line.type == "anyxml" || p.line.type == "<anydata>" ||
                      p.line.type == "<anyxml>"
                  ? NodeMarker::Other
                  : NodeMarker::Leaf;
        }
      }
      if ((m == NodeMarker::Leaf || m == NodeMarker::LeafList) && hasChildren) {
        fail("leaf '" + p.line.name + "' has children", p.line.lineNumber);
      }
      section.lines.push_back(std::move(p.line));
    }
    pending_.clear();
  }

  std::string_view text_;
  std::string_view source_;
  TreeDiagram diagram_;
  std::vector<PendingLine> pending_;
  std::size_t base_ = 2;
  std::optional<std::string> pendingHeader_;
  std::uint32_t headerLine_ = 0;
};

// Maps a displayed prefix to a module name via the diagram module's
// bindings; unknown prefixes are kept verbatim as the module label.
std::string moduleOfPrefix(std::string_view prefix, std::string_view diagramModule, const TreeContext* ctx) {
  if (ctx) {
    if (const auto it = ctx->prefixesByModule.find(std::string(diagramModule)); it != ctx->prefixesByModule.end()) {
      if (const auto p = it->second.find(std::string(prefix)); p != it->second.end()) return p->second;
    }
  }
  return std::string(prefix);
}

std::pair<std::string, std::string> qualified(std::string_view token, std::string_view defaultModule,
                                              std::string_view diagramModule, const TreeContext* ctx) {
  const auto colon = token.find(':');
  if (colon == std::string_view::npos) return {std::string(defaultModule), std::string(token)};
  return {moduleOfPrefix(token.substr(0, colon), diagramModule, ctx), std::string(token.substr(colon + 1))};
}

std::string segmentFor(const std::string& module, const std::string& name, const std::string& treeModule) {
  return module == treeModule ? name : module + ":" + name;
}

std::string listKey(const std::string& treeModule, const SchemaPath& path) {
  return treeModule + "|" + path.str();
}

// Walks one section, invoking `emit` for each countable line with the
// current path, list ancestry and owning module.
template <typename Emit>
void walkSection(const TreeSection& section, std::string_view moduleName, const TreeContext* ctx, bool resolveAncestry,
                 Emit&& emit) {
  std::string treeModule(moduleName);
  SchemaPath base;
  std::vector<SchemaPath> baseLists;
  if (section.kind == TreeSection::Kind::Augment) {
    auto segs = SchemaPath::parse(section.augmentTarget).segments();
    bool first = true;
    for (const auto& seg : segs) {
      auto [module, name] = qualified(seg, moduleName, moduleName, ctx);
      if (first) treeModule = module;
      first = false;
      base.push(segmentFor(module, name, treeModule));
      if (resolveAncestry && ctx && ctx->listPaths.count(listKey(treeModule, base))) baseLists.push_back(base);
    }
  }

  struct Frame {
    int depth;
    bool list;
  };
  std::vector<Frame> stack;
  SchemaPath path = base;
  std::vector<SchemaPath> lists = baseLists;
  int skipBelow = -1;
  for (const auto& line : section.lines) {
    while (!stack.empty() && stack.back().depth >= line.depth) {
      if (stack.back().list) lists.pop_back();
      stack.pop_back();
      path.pop();
    }
    if (skipBelow >= 0) {
      if (line.depth > skipBelow) continue;
      skipBelow = -1;
    }
    if (line.marker == NodeMarker::Other) {
      skipBelow = line.depth;
      continue;
    }
    auto [module, name] = qualified(line.name, moduleName, moduleName, ctx);
    path.push(segmentFor(module, name, treeModule));
    const bool isList = line.marker == NodeMarker::List;
    emit(line, path, lists, module, treeModule);
    if (isList) lists.push_back(path);
    stack.push_back(Frame{line.depth, isList});
  }
}

}  // namespace

TreeDiagram parseTreeText(std::string_view text, std::string_view sourceName) {
  return TextParser(text, sourceName).run();
}

void TreeContext::addLists(const TreeDiagram& diagram) {
  for (const auto& section : diagram.sections) {
    if (section.kind == TreeSection::Kind::Skipped) continue;
    walkSection(section, diagram.module, this, false,
                [&](const TreeLine& line, const SchemaPath& path, const std::vector<SchemaPath>&, const std::string&,
                    const std::string& treeModule) {
                  if (line.marker == NodeMarker::List) listPaths.insert(listKey(treeModule, path));
                });
  }
}

std::vector<ParameterRecord> recordsFromDiagram(const TreeDiagram& diagram, std::string_view moduleName,
                                                std::string_view vendor, const TreeContext* ctx) {
  const std::string module = moduleName.empty() ? diagram.module : std::string(moduleName);
  std::vector<ParameterRecord> out;
  for (const auto& section : diagram.sections) {
    if (section.kind == TreeSection::Kind::Skipped) continue;
    walkSection(section, module, ctx, true,
                [&](const TreeLine& line, const SchemaPath& path, const std::vector<SchemaPath>& lists,
                    const std::string& owner, const std::string&) {
                  if (line.marker != NodeMarker::Leaf && line.marker != NodeMarker::LeafList) return;
                  out.push_back(ParameterRecord{path,
                                                line.marker == NodeMarker::Leaf ? ParamKind::Leaf : ParamKind::LeafList,
                                                lists, owner, std::string(vendor), line.flags != "ro"});
                });
  }
  return out;
}

std::vector<ParameterRecord> parseTreeDiagram(std::string_view text, std::string_view moduleName,
                                              std::string_view vendor, const TreeContext* ctx) {
  return recordsFromDiagram(parseTreeText(text, moduleName), moduleName, vendor, ctx);
}

}  // namespace oplex::tree
