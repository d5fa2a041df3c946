// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

#include "oplex/params.hpp"

#include <algorithm>
#include <future>
#include <set>

namespace oplex {

using schema::NodeKind;
using schema::SchemaNode;

SchemaPath SchemaPath::parse(std::string_view text) {
  std::vector<std::string> segs;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto slash = text.find('/', start);
    const auto end = slash == std::string_view::npos ? text.size() : slash;
    if (end > start) segs.emplace_back(text.substr(start, end - start));
    if (slash == std::string_view::npos) break;
    start = slash + 1;
  }
  return SchemaPath(std::move(segs));
}

bool SchemaPath::isStrictPrefixOf(const SchemaPath& other) const {
  return segments_.size() < other.segments_.size() &&
         std::equal(segments_.begin(), segments_.end(), other.segments_.begin());
}

std::string SchemaPath::str() const {
  std::string out;
  for (const auto& s : segments_) {
    if (!out.empty()) out += '/';
    out += s;
  }
  return out;
}

std::string_view paramKindName(ParamKind kind) noexcept {
  return kind == ParamKind::Leaf ? "leaf" : "leaf-list";
}

ParamKind parseParamKind(std::string_view text) {
  if (text == "leaf") return ParamKind::Leaf;
  if (text == "leaf-list") return ParamKind::LeafList;
  throw Error(ErrorCode::CatalogCorrupt, "unknown parameter kind '" + std::string(text) + "'");
}

RecordKey recordKey(const ParameterRecord& r) {
  RecordKey k{r.path.str(), r.kind, {}};
  k.listAncestry.reserve(r.listAncestry.size());
  for (const auto& a : r.listAncestry) k.listAncestry.push_back(a.str());
  return k;
}

std::vector<RecordMismatch> compareRecords(const std::vector<ParameterRecord>& left,
                                           const std::vector<ParameterRecord>& right) {
  std::map<RecordKey, long long> counts;
  for (const auto& r : left) ++counts[recordKey(r)];
  for (const auto& r : right) --counts[recordKey(r)];
  std::vector<RecordMismatch> out;
  for (auto& [key, delta] : counts) {
    if (delta != 0) out.push_back(RecordMismatch{key, delta});
  }
  return out;
}

namespace {

class Extractor {
 public:
  Extractor(const SchemaNode& root, std::string_view vendor) : target_(root.name), vendor_(vendor) {}

  std::vector<ParameterRecord> run(const SchemaNode& root) {
    for (const auto& c : root.children) walk(c);
    return std::move(out_);
  }

 private:
  void walk(const SchemaNode& n) {
    path_.push(n.originModule == target_ ? n.name : n.originModule + ":" + n.name);
    switch (n.kind) {
      case NodeKind::Leaf:
      case NodeKind::LeafList:
        out_.push_back(ParameterRecord{path_, n.kind == NodeKind::Leaf ? ParamKind::Leaf : ParamKind::LeafList,
                                       lists_, n.originModule, std::string(vendor_), n.config});
        break;
      case NodeKind::List:
        lists_.push_back(path_);
        for (const auto& c : n.children) walk(c);
        lists_.pop_back();
        break;
      default:
        for (const auto& c : n.children) walk(c);
    }
    path_.pop();
  }

  std::string target_;
  std::string_view vendor_;
  SchemaPath path_;
  std::vector<SchemaPath> lists_;
  std::vector<ParameterRecord> out_;
};

}  // namespace

std::vector<ParameterRecord> extract(const SchemaNode& root, std::string_view vendor) {
  return Extractor(root, vendor).run(root);
}

ExtractionResult extractModuleSet(const schema::ModuleSet& set, const std::vector<std::string>& keep,
                                  std::string_view vendor, const schema::ResolveOptions& options,
                                  unsigned jobs) {
  const std::set<std::string> kept(keep.begin(), keep.end());
  const auto targets = set.moduleNames();
  ExtractionResult result;
  for (const auto& m : keep) result.recordsByModule[m];

  struct Partial {
    std::vector<ParameterRecord> records;
    std::vector<schema::Diagnostic> diagnostics;
  };
  const auto work = [&](const std::string& target) {
    auto resolved = schema::resolve(set, target, options);
    Partial p{extract(resolved.root, vendor), std::move(resolved.diagnostics)};
    return p;
  };

  jobs = std::max(1u, jobs);
  for (std::size_t start = 0; start < targets.size(); start += jobs) {
    const std::size_t end = std::min(targets.size(), start + jobs);
    std::vector<std::future<Partial>> batch;
    for (std::size_t i = start; i < end; ++i) {
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, work, targets[i]));
    }
    for (auto& f : batch) {
      Partial p = f.get();
      for (auto& r : p.records) {
        if (kept.count(r.module)) result.recordsByModule[r.module].push_back(std::move(r));
      }
      for (auto& d : p.diagnostics) {
        if (kept.count(d.module)) result.diagnostics.push_back(std::move(d));
      }
    }
  }
  return result;
}

}  // namespace oplex
