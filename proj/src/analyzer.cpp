// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

#include "oplex/analyzer.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

namespace oplex::analyzer {

namespace fs = std::filesystem;

std::vector<std::string> expandInputs(const std::vector<std::string>& paths, std::string_view suffix) {
  std::vector<std::string> out;
  for (const auto& p : paths) {
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      std::vector<std::string> found;
      for (const auto& e : fs::directory_iterator(p)) {
        const auto name = e.path().filename().string();
        if (e.is_regular_file() && name.size() >= suffix.size() &&
            name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
          found.push_back(e.path().string());
        }
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

std::string readText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open file", SourcePos{path});
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t Analysis::recordCount() const {
  std::size_t n = 0;
  for (const auto& [m, d] : modules) n += d.records.size();
  return n;
}

namespace {

struct LoadedFile {
  schema::ModuleFile file;
  std::string digest;
};

std::vector<LoadedFile> loadFiles(const std::vector<std::string>& paths, unsigned jobs) {
  std::vector<LoadedFile> out(paths.size());
  jobs = std::max(1u, jobs);
  const auto load = [](const std::string& path) {
    const std::string text = readText(path);
    return LoadedFile{schema::makeModuleFile(yang::parseSource(text, path), path), catalog::sha256Hex(text)};
  };
  for (std::size_t start = 0; start < paths.size(); start += jobs) {
    const std::size_t end = std::min(paths.size(), start + jobs);
    std::vector<std::future<LoadedFile>> batch;
    for (std::size_t i = start; i < end; ++i) {
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, load, paths[i]));
    }
    for (std::size_t i = start; i < end; ++i) out[i] = batch[i - start].get();
  }
  return out;
}

// Digest over the module, its submodules and its transitive imports.
std::string closureDigest(const schema::ModuleSet& set, const std::map<std::string, std::string>& fileDigests,
                          const std::string& module) {
  std::set<std::string> seen;
  std::vector<std::string> work{module};
  while (!work.empty()) {
    const std::string m = work.back();
    work.pop_back();
    if (!seen.insert(m).second) continue;
    const auto* f = set.find(m);
    if (!f) continue;
    for (const auto& inc : f->includes) work.push_back(inc);
    for (const auto* imp : f->root.childrenNamed("import")) work.push_back(imp->arg());
  }
  std::string material;
  for (const auto& m : seen) {
    const auto it = fileDigests.find(m);
    material += m + ":" + (it == fileDigests.end() ? std::string("absent") : it->second) + "\n";
  }
  return "sha256:" + catalog::sha256Hex(material);
}

}  // namespace

Analysis analyzeYang(const std::vector<std::string>& paths, std::string_view vendor, const YangOptions& options) {
  const auto inputs = expandInputs(paths, ".yang");
  const auto deps = expandInputs(options.searchPaths, ".yang");
  std::set<std::string> inputSet(inputs.begin(), inputs.end());
  std::vector<std::string> all = inputs;
  for (const auto& d : deps) {
    if (!inputSet.count(d)) all.push_back(d);
  }

  auto loaded = loadFiles(all, options.jobs);
  schema::ModuleSet set;
  std::map<std::string, std::string> fileDigests;
  std::vector<std::string> keep;
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    auto& lf = loaded[i];
    if (i < inputs.size() && !lf.file.submodule) keep.push_back(lf.file.name);
    fileDigests[lf.file.name] = lf.digest;
    schema::addModule(set, std::move(lf.file));
  }
  schema::refreshImports(set);

  auto extracted = extractModuleSet(set, keep, vendor, options.resolve, options.jobs);
  Analysis out;
  for (auto& [module, records] : extracted.recordsByModule) {
    auto& data = out.modules[module];
    data.records = std::move(records);
    data.sourceDigest = closureDigest(set, fileDigests, module);
  }
  for (auto& d : extracted.diagnostics) {
    out.modules[d.module].warnings.push_back(d.message);
    out.warnings.push_back(d.module + ": " + d.message);
  }
  for (const auto& u : set.unresolvedImports) out.warnings.push_back("unresolved import " + u);
  return out;
}

std::map<std::string, std::map<std::string, std::string>> collectPrefixes(const std::vector<std::string>& yangPaths) {
  std::map<std::string, std::map<std::string, std::string>> out;
  for (const auto& path : expandInputs(yangPaths, ".yang")) {
    const auto f = schema::makeModuleFile(yang::parseFile(path), path);
    auto& target = out[f.namespaceModule()];
    for (const auto& [prefix, module] : f.prefixes) target.emplace(prefix, module);
  }
  return out;
}

Analysis analyzeTrees(const std::vector<std::string>& paths, std::string_view vendor, const TreeOptions& options) {
  const auto inputs = expandInputs(paths, ".tree");
  tree::TreeContext ctx;
  ctx.prefixesByModule = collectPrefixes(options.prefixSources);

  std::vector<tree::TreeDiagram> diagrams;
  std::vector<std::string> digests;
  std::string material;
  for (const auto& path : inputs) {
    const std::string text = readText(path);
    diagrams.push_back(tree::parseTreeText(text, path));
    digests.push_back(catalog::sha256Hex(text));
    material += digests.back() + "\n";
  }
  for (const auto& [m, prefixes] : ctx.prefixesByModule) {
    for (const auto& [p, target] : prefixes) material += m + ":" + p + "=" + target + "\n";
  }
  const std::string contextDigest = catalog::sha256Hex(material);
  for (const auto& d : diagrams) ctx.addLists(d);

  Analysis out;
  for (std::size_t i = 0; i < diagrams.size(); ++i) {
    const auto& d = diagrams[i];
    if (d.submodule) {
      out.warnings.push_back(d.module + ": submodule diagram skipped; ingest its parent module");
      continue;
    }
    out.modules[d.module].sourceDigest = "sha256:" + catalog::sha256Hex(digests[i] + contextDigest);
    // nodes drawn with a foreign prefix belong to that module, as in the native pipeline
    for (auto& r : tree::recordsFromDiagram(d, d.module, vendor, &ctx)) {
      auto& data = out.modules[r.module];
      if (data.sourceDigest.empty()) data.sourceDigest = "sha256:" + contextDigest;
      data.records.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace oplex::analyzer
