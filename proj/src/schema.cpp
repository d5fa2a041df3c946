// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

#include "oplex/schema.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <future>
#include <sstream>
#include <unordered_set>

namespace oplex::schema {

using yang::RawStatement;

std::string_view nodeKindName(NodeKind kind) noexcept {
  switch (kind) {
    case NodeKind::ModuleRoot: return "module";
    case NodeKind::Container: return "container";
    case NodeKind::List: return "list";
    case NodeKind::Leaf: return "leaf";
    case NodeKind::LeafList: return "leaf-list";
    case NodeKind::Choice: return "choice";
    case NodeKind::Case: return "case";
  }
  return "?";
}

const SchemaNode* SchemaNode::child(std::string_view module, std::string_view childName) const {
  for (const auto& c : children) {
    if (c.name == childName && c.originModule == module) return &c;
  }
  return nullptr;
}

SchemaNode* SchemaNode::child(std::string_view module, std::string_view childName) {
  return const_cast<SchemaNode*>(std::as_const(*this).child(module, childName));
}

const ModuleFile* ModuleSet::find(std::string_view name) const {
  const auto it = modules.find(std::string(name));
  return it == modules.end() ? nullptr : &it->second;
}

std::vector<std::string> ModuleSet::moduleNames() const {
  std::vector<std::string> out;
  for (const auto& [name, file] : modules) {
    if (!file.submodule) out.push_back(name);
  }
  return out;
}

const std::map<std::string, std::string>& ModuleSet::prefixBindings(std::string_view module) const {
  static const std::map<std::string, std::string> kEmpty;
  const auto* f = find(module);
  return f ? f->prefixes : kEmpty;
}

ModuleFile makeModuleFile(RawStatement root, std::string path) {
  ModuleFile f;
  f.name = root.arg();
  f.path = std::move(path);
  f.submodule = root.keyword == "submodule";
  if (f.submodule) {
    if (const auto* b = root.findChild("belongs-to")) {
      f.belongsTo = b->arg();
      if (const auto* p = b->findChild("prefix")) f.prefix = p->arg();
    }
  } else if (const auto* p = root.findChild("prefix")) {
    f.prefix = p->arg();
  }
  if (!f.prefix.empty()) f.prefixes[f.prefix] = f.namespaceModule();
  for (const auto* imp : root.childrenNamed("import")) {
    if (const auto* p = imp->findChild("prefix")) f.prefixes[p->arg()] = imp->arg();
  }
  for (const auto* inc : root.childrenNamed("include")) f.includes.push_back(inc->arg());
  f.root = std::move(root);
  return f;
}

void addModule(ModuleSet& set, ModuleFile file) {
  const auto it = set.modules.find(file.name);
  if (it != set.modules.end()) {
    throw Error(ErrorCode::DuplicateModule,
                "module '" + file.name + "' is declared in both " + it->second.path + " and " + file.path,
                SourcePos{file.path});
  }
  const std::string name = file.name;
  set.modules.emplace(name, std::move(file));
}

void refreshImports(ModuleSet& set) {
  set.unresolvedImports.clear();
  for (const auto& [name, file] : set.modules) {
    for (const auto* imp : file.root.childrenNamed("import")) {
      if (!set.find(imp->arg())) set.unresolvedImports.push_back(name + " -> " + imp->arg());
    }
  }
}

ModuleSet loadModuleSet(const std::vector<std::string>& paths, unsigned jobs) {
  ModuleSet set;
  std::vector<ModuleFile> parsed(paths.size());
  jobs = std::max(1u, jobs);
  for (std::size_t start = 0; start < paths.size(); start += jobs) {
    const std::size_t end = std::min(paths.size(), start + jobs);
    std::vector<std::future<ModuleFile>> batch;
    for (std::size_t i = start; i < end; ++i) {
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                 [&path = paths[i]] { return makeModuleFile(yang::parseFile(path), path); }));
    }
    for (std::size_t i = start; i < end; ++i) parsed[i] = batch[i - start].get();
  }
  for (auto& f : parsed) addModule(set, std::move(f));
  refreshImports(set);
  return set;
}

namespace {

std::pair<std::string_view, std::string_view> splitPrefix(std::string_view id) {
  const auto colon = id.find(':');
  if (colon == std::string_view::npos) return {{}, id};
  return {id.substr(0, colon), id.substr(colon + 1)};
}

std::vector<std::string> splitPath(std::string_view path) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : path) {
    if (c == '/') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else if (c != ' ' && c != '\t' && c != '\n' && c != '\r') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

struct Frame;

struct GroupingRef {
  const RawStatement* stmt = nullptr;
  const ModuleFile* file = nullptr;
  const Frame* scope = nullptr;  // lexical scope the grouping was defined in
};

struct Frame {
  const Frame* parent = nullptr;
  std::map<std::string, GroupingRef, std::less<>> groupings;
};

struct RefineScope {
  const std::map<std::string, const RawStatement*>* targets = nullptr;
  std::string relPath;
};

struct Ctx {
  const ModuleFile* file = nullptr;
  const Frame* scope = nullptr;
  std::string ns;
  bool config = true;
  bool guarded = false;
  std::vector<RefineScope> refines;
};

class Resolver {
 public:
  Resolver(const ModuleSet& set, const ResolveOptions& opts) : set_(set), opts_(opts) {}

  ResolveResult run(std::string_view target) {
    const ModuleFile* mod = set_.find(target);
    if (!mod) throw Error(ErrorCode::UnknownModule, "module '" + std::string(target) + "' is not loaded");
    if (mod->submodule) {
      throw Error(ErrorCode::UnknownModule,
                  "'" + mod->name + "' is a submodule; resolve '" + mod->belongsTo + "' instead");
    }
    target_ = mod->name;
    SchemaNode root;
    root.kind = NodeKind::ModuleRoot;
    root.name = mod->name;
    root.originModule = mod->name;

    const Frame* frame = moduleFrame(*mod);
    for (const ModuleFile* file : filesOf(*mod)) {
      Ctx ctx;
      ctx.file = file;
      ctx.scope = frame;
      ctx.ns = mod->name;
      expandBody(file->root, ctx, root.children, root.kind);
    }
    collectExcludedTops(*mod);
    applyModuleAugments(root);
    finalize(root);
    return ResolveResult{std::move(root), std::move(diags_)};
  }

 private:
  void diag(DiagnosticKind kind, std::string module, std::string message) {
    diags_.push_back(Diagnostic{kind, std::move(module), std::move(message)});
  }

  static std::string where(const RawStatement& s) {
    return s.location.fileName() + ":" + std::to_string(s.location.line);
  }

  // The module file followed by every transitively included submodule.
  std::vector<const ModuleFile*> filesOf(const ModuleFile& mod) {
    std::vector<const ModuleFile*> out{&mod};
    std::set<std::string> seen{mod.name};
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (const auto& inc : out[i]->includes) {
        if (!seen.insert(inc).second) continue;
        const ModuleFile* sub = set_.find(inc);
        if (!sub || !sub->submodule) {
          throw Error(ErrorCode::MissingInclude,
                      "'" + out[i]->name + "' includes '" + inc + "', which is not loaded",
                      SourcePos{out[i]->path});
        }
        out.push_back(sub);
      }
    }
    return out;
  }

  const Frame* moduleFrame(const ModuleFile& mod) {
    if (const auto it = moduleFrames_.find(mod.name); it != moduleFrames_.end()) return it->second;
    auto& frame = frames_.emplace_back();
    moduleFrames_[mod.name] = &frame;
    for (const ModuleFile* file : filesOf(mod)) {
      for (const auto* g : file->root.childrenNamed("grouping")) {
        frame.groupings.emplace(g->arg(), GroupingRef{g, file, &frame});
      }
    }
    return &frame;
  }

  // A new lexical frame when `body` defines groupings of its own.
  const Frame* bodyFrame(const RawStatement& body, const ModuleFile* file, const Frame* parent) {
    if (!body.findChild("grouping")) return parent;
    auto& frame = frames_.emplace_back();
    frame.parent = parent;
    for (const auto* g : body.childrenNamed("grouping")) {
      frame.groupings.emplace(g->arg(), GroupingRef{g, file, &frame});
    }
    return &frame;
  }

  GroupingRef lookupGrouping(const RawStatement& uses, const Ctx& ctx) {
    const auto [prefix, name] = splitPrefix(uses.arg());
    std::string module = ctx.file->namespaceModule();
    if (!prefix.empty()) {
      const auto it = ctx.file->prefixes.find(std::string(prefix));
      if (it == ctx.file->prefixes.end()) {
        throw Error(ErrorCode::UnresolvedGrouping, "unknown prefix in 'uses " + uses.arg() + "'",
                    SourcePos{uses.location.fileName(), uses.location.line});
      }
      module = it->second;
    }
    if (module == ctx.file->namespaceModule()) {
      for (const Frame* f = ctx.scope; f; f = f->parent) {
        if (const auto it = f->groupings.find(name); it != f->groupings.end()) return it->second;
      }
    } else if (const ModuleFile* other = set_.find(module)) {
      const Frame* f = moduleFrame(*other);
      if (const auto it = f->groupings.find(name); it != f->groupings.end()) return it->second;
    }
    throw Error(ErrorCode::UnresolvedGrouping, "grouping '" + uses.arg() + "' not found",
                SourcePos{uses.location.fileName(), uses.location.line});
  }

  // False when the node must be pruned under an explicit feature set.
  bool featuresAllow(const RawStatement& stmt, bool& guarded) {
    bool allow = true;
    for (const auto* f : stmt.childrenNamed("if-feature")) {
      guarded = true;
      if (opts_.features && !evaluateIfFeature(f->arg(), *opts_.features)) allow = false;
    }
    return allow;
  }

  static std::optional<bool> explicitConfig(const RawStatement& stmt) {
    if (const auto* c = stmt.findChild("config")) return c->arg() != "false";
    return std::nullopt;
  }

  // Applies pending refinements addressed at `name` under the active uses
  // scopes and returns the descended refine scopes for the node's children.
  std::vector<RefineScope> descendRefines(const std::vector<RefineScope>& refines, const std::string& name,
                                          SchemaNode& node) {
    std::vector<RefineScope> next;
    next.reserve(refines.size());
    for (const auto& r : refines) {
      RefineScope d{r.targets, r.relPath.empty() ? name : r.relPath + "/" + name};
      if (const auto it = r.targets->find(d.relPath); it != r.targets->end()) {
        applyRefine(*it->second, node);
        appliedRefines_.insert(it->second);
      }
      next.push_back(std::move(d));
    }
    return next;
  }

  void applyRefine(const RawStatement& refine, SchemaNode& node) {
    for (const auto& sub : refine.children) {
      if (sub.keyword == "config") {
        node.config = sub.arg() != "false";
      } else if (sub.keyword == "description") {
        node.description = sub.arg();
      } else if (sub.keyword != "reference" && sub.keyword.find(':') == std::string::npos) {
        diag(DiagnosticKind::IgnoredRefinement, node.originModule,
             "refine '" + refine.arg() + "': '" + sub.keyword + "' is not applied (" + where(sub) + ")");
      }
    }
  }

  void expandBody(const RawStatement& body, const Ctx& ctx, std::vector<SchemaNode>& out, NodeKind parentKind) {
    for (const auto& stmt : body.children) {
      const std::string& kw = stmt.keyword;
      if (kw == "uses") {
        expandUses(stmt, ctx, out);
      } else if (kw == "anydata" || kw == "anyxml") {
        diag(DiagnosticKind::OpaqueDataNode, ctx.ns, kw + " '" + stmt.arg() + "' contributes no parameters (" +
                                                         where(stmt) + ")");
      } else if (kw == "container" || kw == "list" || kw == "leaf" || kw == "leaf-list" || kw == "choice" ||
                 kw == "case") {
        if (parentKind == NodeKind::Choice && kw != "case") {
          // shorthand case: implicit case node named after the data node
          SchemaNode kase;
          kase.kind = NodeKind::Case;
          kase.name = stmt.arg();
          kase.originModule = ctx.ns;
          kase.config = ctx.config;
          kase.featureGuarded = ctx.guarded;
          Ctx inner = ctx;
          inner.refines = descendRefines(ctx.refines, kase.name, kase);
          if (auto node = makeNode(stmt, inner)) kase.children.push_back(std::move(*node));
          if (!kase.children.empty()) out.push_back(std::move(kase));
        } else if (auto node = makeNode(stmt, ctx)) {
          out.push_back(std::move(*node));
        }
      }
    }
  }

  std::optional<SchemaNode> makeNode(const RawStatement& stmt, const Ctx& ctx) {
    const std::string& kw = stmt.keyword;
    SchemaNode node;
    node.kind = kw == "container"   ? NodeKind::Container
                : kw == "list"      ? NodeKind::List
                : kw == "leaf"      ? NodeKind::Leaf
                : kw == "leaf-list" ? NodeKind::LeafList
                : kw == "choice"    ? NodeKind::Choice
                                    : NodeKind::Case;
    node.name = stmt.arg();
    node.originModule = ctx.ns;
    node.featureGuarded = ctx.guarded;
    if (!featuresAllow(stmt, node.featureGuarded)) return std::nullopt;
    const auto cfg = explicitConfig(stmt);
    node.config = ctx.config && cfg.value_or(true);
    if (const auto* d = stmt.findChild("description")) node.description = d->arg();
    if (node.kind == NodeKind::List) {
      if (const auto* k = stmt.findChild("key")) {
        std::istringstream ks(k->arg());
        for (std::string key; ks >> key;) node.keyNames.push_back(std::string(splitPrefix(key).second));
      }
    }
    Ctx inner;
    inner.refines = descendRefines(ctx.refines, node.name, node);
    if (node.kind == NodeKind::Leaf || node.kind == NodeKind::LeafList) return node;
    inner.file = ctx.file;
    inner.scope = bodyFrame(stmt, ctx.file, ctx.scope);
    inner.ns = ctx.ns;
    inner.config = node.config;
    inner.guarded = node.featureGuarded;
    expandBody(stmt, inner, node.children, node.kind);
    return node;
  }

  void expandUses(const RawStatement& uses, const Ctx& ctx, std::vector<SchemaNode>& out) {
    bool guarded = ctx.guarded;
    if (!featuresAllow(uses, guarded)) return;
    const GroupingRef g = lookupGrouping(uses, ctx);
    if (!active_.insert(g.stmt).second) {
      throw Error(ErrorCode::CircularGrouping,
                  "grouping '" + g.stmt->arg() + "' uses itself through '" + uses.arg() + "'",
                  SourcePos{uses.location.fileName(), uses.location.line});
    }
    std::map<std::string, const RawStatement*> refineTargets;
    for (const auto* r : uses.childrenNamed("refine")) {
      std::string key;
      for (const auto& seg : splitPath(r->arg())) {
        if (!key.empty()) key += '/';
        key += splitPrefix(seg).second;
      }
      refineTargets[key] = r;
    }
    Ctx inner;
    inner.file = g.file;
    inner.scope = bodyFrame(*g.stmt, g.file, g.scope);
    inner.ns = ctx.ns;
    inner.config = ctx.config;
    inner.guarded = guarded;
    inner.refines = ctx.refines;
    if (!refineTargets.empty()) inner.refines.push_back(RefineScope{&refineTargets, {}});

    std::vector<SchemaNode> expanded;
    expandBody(*g.stmt, inner, expanded, NodeKind::Container);
    active_.erase(g.stmt);

    for (const auto& [path, r] : refineTargets) {
      if (!appliedRefines_.count(r)) {
        diag(DiagnosticKind::IgnoredRefinement, ctx.ns, "refine target '" + path + "' not found (" + where(*r) + ")");
      }
    }

    for (const auto* aug : uses.childrenNamed("augment")) {
      SchemaNode* target = nullptr;
      std::vector<SchemaNode>* level = &expanded;
      for (const auto& seg : splitPath(aug->arg())) {
        const auto name = splitPrefix(seg).second;
        target = nullptr;
        for (auto& n : *level) {
          if (n.name == name) {
            target = &n;
            break;
          }
        }
        if (!target) break;
        level = &target->children;
      }
      if (!target) {
        diag(DiagnosticKind::UnresolvedAugmentTarget, ctx.ns,
             "uses-augment target '" + aug->arg() + "' not found (" + where(*aug) + ")");
        continue;
      }
      Ctx actx = ctx;
      actx.config = target->config;
      actx.refines.clear();
      bool aguarded = guarded;
      if (!featuresAllow(*aug, aguarded)) continue;
      actx.guarded = aguarded;
      actx.scope = bodyFrame(*aug, ctx.file, ctx.scope);
      expandBody(*aug, actx, target->children, target->kind);
    }
    for (auto& n : expanded) out.push_back(std::move(n));
  }

  void collectExcludedTops(const ModuleFile& mod) {
    excludedTops_.clear();
    for (const ModuleFile* file : filesOf(mod)) {
      for (const auto& s : file->root.children) {
        if (s.keyword == "rpc" || s.keyword == "notification") excludedTops_.insert(s.arg());
      }
    }
  }

  struct PendingAugment {
    const RawStatement* stmt;
    const ModuleFile* file;
    std::vector<std::pair<std::string, std::string>> segments;  // (module, name)
  };

  void applyModuleAugments(SchemaNode& root) {
    std::vector<PendingAugment> pending;
    for (const auto& [name, file] : set_.modules) {
      for (const auto* aug : file.root.childrenNamed("augment")) {
        PendingAugment p{aug, &file, {}};
        bool ok = true;
        for (const auto& seg : splitPath(aug->arg())) {
          const auto [prefix, local] = splitPrefix(seg);
          std::string module = file.namespaceModule();
          if (!prefix.empty()) {
            const auto it = file.prefixes.find(std::string(prefix));
            if (it == file.prefixes.end()) {
              ok = false;
              break;
            }
            module = it->second;
          }
          p.segments.emplace_back(std::move(module), std::string(local));
        }
        const bool mine = file.namespaceModule() == target_;
        if (!ok || p.segments.empty()) {
          if (mine) {
            diag(DiagnosticKind::UnresolvedAugmentTarget, target_,
                 "augment '" + aug->arg() + "' has an unknown prefix (" + where(*aug) + ")");
          }
          continue;
        }
        const std::string& targetModule = p.segments.front().first;
        if (!set_.find(targetModule)) {
          if (mine) {
            diag(DiagnosticKind::AugmentTargetModuleAbsent, target_,
                 "augment '" + aug->arg() + "' targets module '" + targetModule + "', which is not loaded; skipped");
          }
          continue;
        }
        if (targetModule != target_) continue;
        if (excludedTops_.count(p.segments.front().second)) continue;  // rpc / notification
        pending.push_back(std::move(p));
      }
    }

    // Augments may target nodes introduced by other augments: apply until no
    // further progress is made.
    bool progress = true;
    while (!pending.empty() && progress) {
      progress = false;
      for (auto it = pending.begin(); it != pending.end();) {
        if (SchemaNode* target = locate(root, it->segments)) {
          applyAugment(*it, *target);
          it = pending.erase(it);
          progress = true;
        } else {
          ++it;
        }
      }
    }
    for (const auto& p : pending) {
      diag(DiagnosticKind::UnresolvedAugmentTarget, p.file->namespaceModule(),
           "augment target '" + p.stmt->arg() + "' does not exist; skipped (" + where(*p.stmt) + ")");
    }
  }

  static SchemaNode* locate(SchemaNode& root, const std::vector<std::pair<std::string, std::string>>& segs) {
    SchemaNode* cur = &root;
    for (const auto& [module, name] : segs) {
      cur = cur->child(module, name);
      if (!cur) return nullptr;
    }
    return cur;
  }

  void applyAugment(const PendingAugment& p, SchemaNode& target) {
    Ctx ctx;
    ctx.file = p.file;
    const ModuleFile* owner = set_.find(p.file->namespaceModule());
    ctx.scope = bodyFrame(*p.stmt, p.file, moduleFrame(owner ? *owner : *p.file));
    ctx.ns = p.file->namespaceModule();
    ctx.config = target.config;
    bool guarded = target.featureGuarded;
    if (!featuresAllow(*p.stmt, guarded)) return;
    ctx.guarded = guarded;
    expandBody(*p.stmt, ctx, target.children, target.kind);
  }

  void finalize(const SchemaNode& root) {
    std::map<std::string, std::size_t> guardedLeaves;
    std::function<void(const SchemaNode&)> walk = [&](const SchemaNode& n) {
      std::set<std::pair<std::string, std::string>> seen;
      for (const auto& c : n.children) {
        if (!seen.emplace(c.originModule, c.name).second) {
          diag(DiagnosticKind::DuplicateSibling, c.originModule,
               "duplicate sibling '" + c.name + "' under '" + n.name + "'");
        }
        if (c.featureGuarded && (c.kind == NodeKind::Leaf || c.kind == NodeKind::LeafList)) {
          ++guardedLeaves[c.originModule];
        }
        walk(c);
      }
    };
    walk(root);
    if (!opts_.features) {
      for (const auto& [module, count] : guardedLeaves) {
        diag(DiagnosticKind::FeatureGuarded, module,
             std::to_string(count) + " if-feature guarded parameters counted unconditionally");
      }
    }
  }

  const ModuleSet& set_;
  const ResolveOptions& opts_;
  std::string target_;
  std::deque<Frame> frames_;
  std::map<std::string, const Frame*> moduleFrames_;
  std::unordered_set<const RawStatement*> active_;
  std::unordered_set<const RawStatement*> appliedRefines_;
  std::set<std::string> excludedTops_;
  std::vector<Diagnostic> diags_;
};

// if-feature expression grammar (RFC 7950 section 14):
//   expr   = term *("or" term)
//   term   = factor *("and" factor)
//   factor = "not" factor / "(" expr ")" / identifier-ref
class FeatureExpr {
 public:
  FeatureExpr(std::string_view text, const std::set<std::string>& features) : features_(features) {
    std::string cur;
    for (const char c : text) {
      if (c == '(' || c == ')' || c == ' ' || c == '\t' || c == '\n') {
        if (!cur.empty()) tokens_.push_back(std::move(cur));
        cur.clear();
        if (c == '(' || c == ')') tokens_.emplace_back(1, c);
      } else {
        cur.push_back(c);
      }
    }
    if (!cur.empty()) tokens_.push_back(std::move(cur));
  }

  bool eval() { return expr(); }

 private:
  bool expr() {
    bool v = term();
    while (peek() == "or") {
      ++pos_;
      v = term() || v;
    }
    return v;
  }
  bool term() {
    bool v = factor();
    while (peek() == "and") {
      ++pos_;
      v = factor() && v;
    }
    return v;
  }
  bool factor() {
    const std::string t = peek();
    if (t.empty()) return false;
    ++pos_;
    if (t == "not") return !factor();
    if (t == "(") {
      const bool v = expr();
      if (peek() == ")") ++pos_;
      return v;
    }
    return features_.count(std::string(splitPrefix(t).second)) > 0;
  }
  std::string peek() const { return pos_ < tokens_.size() ? tokens_[pos_] : std::string(); }

  const std::set<std::string>& features_;
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

ResolveResult resolve(const ModuleSet& set, std::string_view target, const ResolveOptions& options) {
  return Resolver(set, options).run(target);
}

bool evaluateIfFeature(std::string_view expr, const std::set<std::string>& features) {
  return FeatureExpr(expr, features).eval();
}

}  // namespace oplex::schema
