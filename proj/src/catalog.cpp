// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

#include "oplex/catalog.hpp"

#include <fcntl.h>
#include <openssl/evp.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace oplex::catalog {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view frontendName(Frontend f) noexcept {
  return f == Frontend::Native ? "native" : "tree-diagram";
}

Frontend parseFrontend(std::string_view text) {
  if (text == "native") return Frontend::Native;
  if (text == "tree-diagram" || text == "tree") return Frontend::TreeDiagram;
  throw Error(ErrorCode::CatalogCorrupt, "unknown frontend '" + std::string(text) + "'");
}

const CatalogEntry* Catalog::find(const EntryKey& key) const {
  const auto it = entries.find(key);
  return it == entries.end() ? nullptr : &it->second;
}

const CatalogEntry* Catalog::preferred(std::string_view vendor, std::string_view module) const {
  if (const auto* e = find({std::string(vendor), std::string(module), Frontend::Native})) return e;
  return find({std::string(vendor), std::string(module), Frontend::TreeDiagram});
}

bool Catalog::hasVendor(std::string_view vendor) const {
  const auto it = entries.lower_bound(EntryKey{std::string(vendor), {}, Frontend::Native});
  return it != entries.end() && it->first.vendor == vendor;
}

std::vector<std::string> Catalog::modulesOf(std::string_view vendor) const {
  std::vector<std::string> out;
  for (const auto& [key, e] : entries) {
    if (key.vendor == vendor && (out.empty() || out.back() != key.module)) out.push_back(key.module);
  }
  return out;
}

namespace {

void checkName(std::string_view what, std::string_view name) {
  const bool ok = !name.empty() && name != "." && name != ".." &&
                  std::all_of(name.begin(), name.end(), [](unsigned char c) {
                    return std::isalnum(c) || c == '-' || c == '_' || c == '.';
                  });
  if (!ok) throw Error(ErrorCode::StorageWrite, std::string(what) + " name '" + std::string(name) + "' is not a safe file name");
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string entryFile(const EntryKey& k) {
  return k.vendor + "/" + k.module + (k.frontend == Frontend::Native ? ".json" : ".tree.json");
}

json recordToJson(const ParameterRecord& r) {
  json anc = json::array();
  for (const auto& a : r.listAncestry) anc.push_back(a.str());
  return json{{"path", r.path.str()},
              {"kind", std::string(paramKindName(r.kind))},
              {"listAncestry", std::move(anc)},
              {"module", r.module},
              {"config", r.config}};
}

json entryToJson(const CatalogEntry& e) {
  json records = json::array();
  for (const auto& r : e.records) records.push_back(recordToJson(r));
  return json{{"vendor", e.vendor},
              {"module", e.module},
              {"frontend", std::string(frontendName(e.frontend))},
              {"sourceDigest", e.sourceDigest},
              {"ingestedAt", e.ingestedAt},
              {"warnings", e.warnings},
              {"records", std::move(records)}};
}

CatalogEntry entryFromJson(const json& j) {
  CatalogEntry e;
  e.vendor = j.at("vendor").get<std::string>();
  e.module = j.at("module").get<std::string>();
  e.frontend = parseFrontend(j.at("frontend").get<std::string>());
  e.sourceDigest = j.at("sourceDigest").get<std::string>();
  e.ingestedAt = j.at("ingestedAt").get<std::string>();
  e.warnings = j.at("warnings").get<std::vector<std::string>>();
  for (const auto& r : j.at("records")) {
    ParameterRecord rec;
    rec.path = SchemaPath::parse(r.at("path").get<std::string>());
    rec.kind = parseParamKind(r.at("kind").get<std::string>());
    for (const auto& a : r.at("listAncestry")) rec.listAncestry.push_back(SchemaPath::parse(a.get<std::string>()));
    rec.module = r.at("module").get<std::string>();
    rec.vendor = e.vendor;
    rec.config = r.at("config").get<bool>();
    e.records.push_back(std::move(rec));
  }
  return e;
}

std::string readFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::CatalogCorrupt, "cannot read catalog file", SourcePos{p.string()});
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeAtomically(const fs::path& p, const std::string& content) {
  std::error_code ec;
  if (fs::exists(p, ec)) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (ss.str() == content) return;
  }
  fs::create_directories(p.parent_path(), ec);
  if (ec) throw Error(ErrorCode::StorageWrite, "cannot create directory: " + ec.message(), SourcePos{p.parent_path().string()});
  const fs::path tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::StorageWrite, "write failed", SourcePos{tmp.string()});
  }
  fs::rename(tmp, p, ec);
  if (ec) throw Error(ErrorCode::StorageWrite, "rename failed: " + ec.message(), SourcePos{p.string()});
}

class WriterLock {
 public:
  explicit WriterLock(const fs::path& dir) {
    const auto path = (dir / ".lock").string();
    fd_ = ::open(path.c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ < 0 || ::flock(fd_, LOCK_EX) != 0) {
      if (fd_ >= 0) ::close(fd_);
      throw Error(ErrorCode::StorageWrite, "cannot acquire catalog lock", SourcePos{path});
    }
  }
  ~WriterLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  WriterLock(const WriterLock&) = delete;
  WriterLock& operator=(const WriterLock&) = delete;

 private:
  int fd_ = -1;
};

}  // namespace

Catalog ingest(Catalog catalog, std::string_view vendor, const std::map<std::string, ModuleData>& byModule,
               Frontend frontend, IngestSummary* summary, std::string_view now) {
  IngestSummary local;
  const std::string stamp = now.empty() ? utcTimestamp() : std::string(now);
  for (const auto& [module, data] : byModule) {
    for (const auto& r : data.records) {
      if (r.vendor != vendor) {
        throw Error(ErrorCode::VendorMismatch, "record '" + r.path.str() + "' of module '" + module +
                                                   "' has vendor '" + r.vendor + "', expected '" +
                                                   std::string(vendor) + "'");
      }
    }
    EntryKey key{std::string(vendor), module, frontend};
    auto it = catalog.entries.find(key);
    if (it != catalog.entries.end() && it->second.sourceDigest == data.sourceDigest) {
      ++local.unchanged;
      continue;
    }
    (it == catalog.entries.end() ? local.inserted : local.updated)++;
    CatalogEntry e{key.vendor, module, data.records, data.sourceDigest, stamp, frontend, data.warnings};
    catalog.entries.insert_or_assign(std::move(key), std::move(e));
  }
  if (summary) *summary = local;
  return catalog;
}

std::vector<const CatalogEntry*> query(const Catalog& catalog, const std::optional<std::string>& vendor,
                                       const std::optional<std::string>& modulePattern) {
  const std::string needle = modulePattern ? lower(*modulePattern) : std::string();
  std::vector<const CatalogEntry*> out;
  for (const auto& [key, e] : catalog.entries) {
    if (vendor && key.vendor != *vendor) continue;
    if (modulePattern && lower(key.module).find(needle) == std::string::npos) continue;
    out.push_back(&e);
  }
  return out;
}

Catalog loadCatalog(const fs::path& dir) {
  Catalog catalog;
  const fs::path manifestPath = dir / "manifest.json";
  if (!fs::exists(manifestPath)) return catalog;
  const auto corrupt = [](const fs::path& p, const std::string& why) {
    return Error(ErrorCode::CatalogCorrupt, why, SourcePos{p.string()});
  };
  json manifest;
  try {
    manifest = json::parse(readFile(manifestPath));
  } catch (const json::exception& e) {
    throw corrupt(manifestPath, e.what());
  }
  if (!manifest.is_object() || !manifest.contains("formatVersion") || !manifest["formatVersion"].is_number_integer()) {
    throw corrupt(manifestPath, "manifest has no integer formatVersion");
  }
  const int version = manifest["formatVersion"].get<int>();
  if (version > kFormatVersion) {
    throw Error(ErrorCode::UnsupportedFormat,
                "catalog format " + std::to_string(version) + " is newer than supported format " +
                    std::to_string(kFormatVersion),
                SourcePos{manifestPath.string()});
  }
  catalog.formatVersion = version;
  try {
    for (const auto& item : manifest.at("entries")) {
      const fs::path file = dir / item.at("file").get<std::string>();
      json doc;
      try {
        doc = json::parse(readFile(file));
      } catch (const json::exception& e) {
        throw corrupt(file, e.what());
      }
      CatalogEntry e = entryFromJson(doc);
      if (e.vendor != item.at("vendor").get<std::string>() || e.module != item.at("module").get<std::string>() ||
          frontendName(e.frontend) != item.at("frontend").get<std::string>() ||
          e.sourceDigest != item.at("sourceDigest").get<std::string>() ||
          e.records.size() != item.at("recordCount").get<std::size_t>()) {
        throw corrupt(file, "entry does not match its manifest line");
      }
      auto key = e.key();
      if (!catalog.entries.emplace(std::move(key), std::move(e)).second) throw corrupt(file, "duplicate entry");
    }
  } catch (const json::exception& e) {
    throw corrupt(manifestPath, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::CatalogCorrupt) throw;
    throw corrupt(manifestPath, e.what());
  }
  return catalog;
}

void saveCatalog(const Catalog& catalog, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::StorageWrite, "cannot create catalog directory: " + ec.message(), SourcePos{dir.string()});
  WriterLock lock(dir);
  json index = json::array();
  for (const auto& [key, e] : catalog.entries) {
    checkName("vendor", key.vendor);
    checkName("module", key.module);
    const std::string file = entryFile(key);
    writeAtomically(dir / file, entryToJson(e).dump(1) + "\n");
    index.push_back(json{{"vendor", key.vendor},
                         {"module", key.module},
                         {"frontend", std::string(frontendName(key.frontend))},
                         {"file", file},
                         {"sourceDigest", e.sourceDigest},
                         {"recordCount", e.records.size()}});
  }
  const json manifest{{"formatVersion", catalog.formatVersion}, {"entries", std::move(index)}};
  writeAtomically(dir / "manifest.json", manifest.dump(2) + "\n");
}

std::string sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string utcTimestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace oplex::catalog
