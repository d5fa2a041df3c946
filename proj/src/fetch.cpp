// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

#include "oplex/fetch.hpp"

#include <fstream>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"
#include "json.hpp"
#include "oplex/analyzer.hpp"
#include "oplex/error.hpp"

namespace oplex::fetch {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string download(const std::string& baseUrl, const std::string& table) {
  httplib::Client client(baseUrl);
  client.set_follow_location(true);
  client.set_connection_timeout(10);
  client.set_read_timeout(120);
  const auto res = client.Get("/api/" + table);
  if (!res) {
    throw Error(ErrorCode::Io, "request failed: " + httplib::to_string(res.error()), SourcePos{baseUrl + "/api/" + table});
  }
  if (res->status != 200) {
    throw Error(ErrorCode::Io, "HTTP status " + std::to_string(res->status), SourcePos{baseUrl + "/api/" + table});
  }
  return res->body;
}

}  // namespace

std::string fetchPeeringDb(const FetchOptions& options) {
  std::error_code ec;
  fs::create_directories(options.cacheDir, ec);
  json combined = json::object();
  for (const char* table : {"ix", "ixfac", "ixlan", "netixlan"}) {
    const fs::path cached = options.cacheDir / (std::string(table) + ".json");
    std::string body;
    if (!options.refresh && fs::is_regular_file(cached)) {
      body = analyzer::readText(cached.string());
    } else {
      body = download(options.baseUrl, table);
      std::ofstream out(cached, std::ios::binary | std::ios::trunc);
      out << body;
    }
    try {
      combined[table] = json::parse(body);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::MalformedInput, e.what(), SourcePos{cached.string()});
    }
  }
  return combined.dump(1) + "\n";
}

}  // namespace oplex::fetch
