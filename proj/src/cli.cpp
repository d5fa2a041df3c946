// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

#include "oplex/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "oplex/analyzer.hpp"
#include "oplex/catalog.hpp"
#include "oplex/dimension.hpp"
#include "oplex/fetch.hpp"
#include "oplex/ixp.hpp"
#include "oplex/selector.hpp"

namespace oplex::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum class Format { Csv, Markdown, Json };

/// A result table rendered in the selected output format.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

std::string cellText(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

std::string csvCell(const json& v) {
  const std::string s = cellText(v);
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json tableJson(const Table& t) {
  json arr = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = row[i];
    arr.push_back(std::move(obj));
  }
  return arr;
}

void render(std::ostream& out, Format fmt, const Table& t) {
  switch (fmt) {
    case Format::Json:
      out << tableJson(t).dump(2) << '\n';
      return;
    case Format::Csv:
      for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
      out << '\n';
      for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csvCell(row[i]);
        out << '\n';
      }
      return;
    case Format::Markdown:
      out << '|';
      for (const auto& c : t.columns) out << ' ' << c << " |";
      out << "\n|";
      for (std::size_t i = 0; i < t.columns.size(); ++i) out << "---|";
      out << '\n';
      for (const auto& row : t.rows) {
        out << '|';
        for (const auto& v : row) {
          std::string s = cellText(v);
          std::replace(s.begin(), s.end(), '|', '/');
          out << ' ' << s << " |";
        }
        out << '\n';
      }
      return;
  }
}

struct Globals {
  std::string catalogDir;
  std::string format;
  bool quiet = false;
  unsigned jobs = 0;
};

struct Context {
  const Globals& g;
  const Environment& env;
  std::ostream& out;
  std::ostream& err;

  fs::path catalogDir() const {
    if (!g.catalogDir.empty()) return g.catalogDir;
    if (env.catalogDir && !env.catalogDir->empty()) return *env.catalogDir;
    return "oplex-catalog";
  }
  Format format() const {
    if (g.format == "csv") return Format::Csv;
    if (g.format == "json") return Format::Json;
    if (g.format == "markdown") return Format::Markdown;
    return env.stdoutIsTerminal ? Format::Markdown : Format::Csv;
  }
  unsigned jobs() const { return g.jobs ? g.jobs : std::max(1u, std::thread::hardware_concurrency()); }
  void warn(const std::string& msg) const {
    if (!g.quiet) err << "warning: " << msg << '\n';
  }
};

std::string plural(std::size_t n, const char* word) {
  return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
}

void writeFile(const fs::path& p, const std::string& content) {
  std::error_code ec;
  if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  f << content;
  if (!f) throw Error(ErrorCode::Io, "cannot write file", SourcePos{p.string()});
}

// ---- ingest ---------------------------------------------------------------

struct IngestArgs {
  std::string vendor;
  std::string frontend = "native";
  std::vector<std::string> searchPaths;
  std::vector<std::string> prefixSources;
  std::vector<std::string> features;
  bool featuresGiven = false;
  std::vector<std::string> paths;
};

int cmdIngest(const Context& c, const IngestArgs& a) {
  const auto frontend = catalog::parseFrontend(a.frontend);
  analyzer::Analysis analysis;
  if (frontend == catalog::Frontend::Native) {
    analyzer::YangOptions opts;
    opts.searchPaths = a.searchPaths;
    opts.jobs = c.jobs();
    if (a.featuresGiven) opts.resolve.features = std::set<std::string>(a.features.begin(), a.features.end());
    analysis = analyzer::analyzeYang(a.paths, a.vendor, opts);
  } else {
    analyzer::TreeOptions opts;
    opts.prefixSources = a.prefixSources;
    opts.prefixSources.insert(opts.prefixSources.end(), a.searchPaths.begin(), a.searchPaths.end());
    analysis = analyzer::analyzeTrees(a.paths, a.vendor, opts);
  }
  for (const auto& w : analysis.warnings) c.warn(w);

  const auto dir = c.catalogDir();
  catalog::IngestSummary summary;
  auto cat = catalog::ingest(catalog::loadCatalog(dir), a.vendor, analysis.modules, frontend, &summary);
  catalog::saveCatalog(cat, dir);
  c.out << plural(analysis.modules.size(), "module") << ", " << plural(analysis.recordCount(), "record") << '\n';
  if (!c.g.quiet) {
    c.err << "catalog " << dir.string() << ": " << summary.inserted << " inserted, " << summary.updated
          << " updated, " << summary.unchanged << " unchanged\n";
  }
  return 0;
}

// ---- score ----------------------------------------------------------------

struct ScoreArgs {
  std::string profile;
  std::string baseline;
  std::string instance;
  std::string mode = "device";
  bool agnostic = false;
  std::string vendor;
  bool explain = false;
  std::string profilesDir = "profiles";
  std::string instancesDir = "instances";
};

dimension::InstanceProfile findInstance(const std::string& ref, const fs::path& dir) {
  if (ref.empty()) return {};
  std::error_code ec;
  if (fs::is_regular_file(ref, ec)) return dimension::loadInstanceProfile(ref);
  if (fs::is_regular_file(dir / (ref + ".json"), ec)) return dimension::loadInstanceProfile(dir / (ref + ".json"));
  throw Error(ErrorCode::UnknownProfile, "no instance profile '" + ref + "' in " + dir.string());
}

int cmdScore(const Context& c, const ScoreArgs& a) {
  const auto mode = dimension::parseMode(a.mode);
  const bool agnostic = a.agnostic || mode == dimension::Mode::Agnostic;
  if (!agnostic && a.profile.empty()) throw Error(ErrorCode::UnknownProfile, "score needs --profile or --agnostic");
  const auto cat = catalog::loadCatalog(c.catalogDir());
  const auto instance = findInstance(a.instance, a.instancesDir);
  const bool sized = !a.instance.empty();

  const auto resolveProfile = [&](const std::string& ref) {
    auto p = selector::findProfile(ref, a.profilesDir);
    if (!a.vendor.empty()) p.vendor = a.vendor;
    return p;
  };
  const auto evaluate = [&](const selector::ArchitectureProfile& p, std::optional<selector::Selection>* keep) {
    auto sel = selector::selectModules(cat, p);
    auto rep = p.agnostic && !sized ? dimension::computeAgnosticDimension(cat, p.vendor)
                                    : dimension::computeDeviceDimension(sel, cat, instance, c.jobs());
    if (keep) *keep = std::move(sel);
    return rep;
  };

  selector::ArchitectureProfile profile;
  if (agnostic) {
    if (a.vendor.empty()) throw Error(ErrorCode::UnknownVendor, "--agnostic needs --vendor");
    profile = selector::agnosticProfile(a.vendor);
  } else {
    profile = resolveProfile(a.profile);
  }
  std::optional<selector::Selection> selection;
  auto report = evaluate(profile, &selection);
  if (!a.baseline.empty()) report = dimension::computeScore(std::move(report), evaluate(resolveProfile(a.baseline), nullptr));
  for (const auto& w : report.warnings) c.warn(w);
  report.mode = agnostic ? dimension::Mode::Agnostic : mode;

  const Format fmt = c.format();
  Table summary{{"profile", "vendor", "mode", "modules", "delta"}, {}};
  std::vector<json> row{report.profile, report.vendor, std::string(dimension::modeName(report.mode)),
                        report.perModule.size(), report.total};
  if (report.oplexScore) {
    summary.columns.insert(summary.columns.end(), {"baseline", "baseline_delta", "score"});
    row.insert(row.end(), {*report.baselineName, *report.baselineTotal, report.oplexScore->render(2)});
  }
  summary.rows.push_back(std::move(row));

  Table modules{{"module", "delta"}, {}};
  for (const auto& [m, d] : report.perModule) modules.rows.push_back({m, d});
  Table matches{{"function", "module"}, {}};
  for (const auto& [f, m] : selection->explain) matches.rows.push_back({f, m});
  for (const auto& f : selection->unmatchedFunctions) matches.rows.push_back({f, nullptr});

  const bool showModules = report.mode == dimension::Mode::Module || a.explain;
  if (fmt == Format::Json) {
    json doc = tableJson(summary)[0];
    if (showModules) doc["modules"] = tableJson(modules);
    if (a.explain) doc["matches"] = tableJson(matches);
    c.out << doc.dump(2) << '\n';
    return 0;
  }
  if (report.mode == dimension::Mode::Module && !a.explain) {
    render(c.out, fmt, modules);
    return 0;
  }
  render(c.out, fmt, summary);
  if (a.explain) {
    c.out << '\n';
    render(c.out, fmt, matches);
    c.out << '\n';
    render(c.out, fmt, modules);
  }
  return 0;
}

// ---- query / verify -------------------------------------------------------

struct QueryArgs {
  std::string vendor;
  std::string module;
  bool records = false;
};

int cmdQuery(const Context& c, const QueryArgs& a) {
  const auto cat = catalog::loadCatalog(c.catalogDir());
  const auto hits = catalog::query(cat, a.vendor.empty() ? std::nullopt : std::optional(a.vendor),
                                   a.module.empty() ? std::nullopt : std::optional(a.module));
  Table t;
  if (a.records) {
    t.columns = {"vendor", "module", "frontend", "path", "kind", "config", "list_ancestry"};
    for (const auto* e : hits) {
      for (const auto& r : e->records) {
        std::string anc;
        for (const auto& l : r.listAncestry) anc += (anc.empty() ? "" : ";") + l.str();
        t.rows.push_back({e->vendor, e->module, std::string(catalog::frontendName(e->frontend)), r.path.str(),
                          std::string(paramKindName(r.kind)), r.config, anc});
      }
    }
  } else {
    t.columns = {"vendor", "module", "frontend", "records", "warnings", "source_digest", "ingested_at"};
    for (const auto* e : hits) {
      t.rows.push_back({e->vendor, e->module, std::string(catalog::frontendName(e->frontend)), e->records.size(),
                        e->warnings.size(), e->sourceDigest, e->ingestedAt});
    }
  }
  render(c.out, c.format(), t);
  return 0;
}

int cmdVerify(const Context& c, const QueryArgs& a) {
  const auto cat = catalog::loadCatalog(c.catalogDir());
  const auto hits = catalog::query(cat, a.vendor.empty() ? std::nullopt : std::optional(a.vendor),
                                   a.module.empty() ? std::nullopt : std::optional(a.module));
  std::set<std::pair<std::string, std::string>> modules;
  for (const auto* e : hits) modules.emplace(e->vendor, e->module);

  Table summary{{"vendor", "module", "native", "tree", "mismatches"}, {}};
  Table details{{"vendor", "module", "path", "kind", "list_ancestry", "native_minus_tree"}, {}};
  std::size_t bad = 0;
  const std::vector<ParameterRecord> none;
  for (const auto& [vendor, module] : modules) {
    const auto* n = cat.find({vendor, module, catalog::Frontend::Native});
    const auto* t = cat.find({vendor, module, catalog::Frontend::TreeDiagram});
    const auto mm = compareRecords(n ? n->records : none, t ? t->records : none);
    if (!mm.empty()) ++bad;
    summary.rows.push_back({vendor, module, n ? json(n->records.size()) : json(nullptr),
                            t ? json(t->records.size()) : json(nullptr), mm.size()});
    for (const auto& m : mm) {
      std::string anc;
      for (const auto& l : m.key.listAncestry) anc += (anc.empty() ? "" : ";") + l;
      details.rows.push_back({vendor, module, m.key.path, std::string(paramKindName(m.key.kind)), anc, m.delta});
    }
  }
  render(c.out, c.format(), summary);
  if (!details.rows.empty()) {
    c.out << '\n';
    render(c.out, c.format(), details);
  }
  if (!c.g.quiet) c.err << modules.size() << " modules compared, " << bad << " with mismatches\n";
  return 0;
}

// ---- ixp ------------------------------------------------------------------

struct IxpArgs {
  std::string input;
  std::string outDir = ".";
  std::string estimator = "floor";
  std::string profilesDir = "profiles";
  std::string instance;
  std::string instancesDir = "instances";
  std::string cacheDir = ".oplex-cache/peeringdb";
  std::string baseUrl = "https://www.peeringdb.com";
  std::string fetchOut = "peeringdb.json";
  bool refresh = false;
};

std::vector<ixp::IxpSizeEstimate> emitSizes(const Context& c, const IxpArgs& a) {
  const auto estimator = ixp::parseEstimator(a.estimator);
  const auto records = ixp::loadPeeringDb(a.input);
  const auto estimates = ixp::estimateAll(records, estimator);
  const fs::path dir = a.outDir;
  writeFile(dir / "ixp_sizes.csv", ixp::sizesCsv(estimates));
  writeFile(dir / "ixp_switch_histogram.csv", ixp::histogramCsv(ixp::switchHistogram(estimates)));
  const auto valid = static_cast<std::size_t>(std::count_if(estimates.begin(), estimates.end(), [](const auto& e) { return e.valid; }));
  if (!c.g.quiet) {
    c.err << records.size() << " entries, " << valid << " valid (estimator " << ixp::estimatorName(estimator)
          << "); wrote " << (dir / "ixp_sizes.csv").string() << '\n';
  }
  return estimates;
}

int cmdIxpSizes(const Context& c, const IxpArgs& a) {
  const auto estimates = emitSizes(c, a);
  Table t{{"switches", "count", "cumulative_percent"}, {}};
  for (const auto& b : ixp::switchHistogram(estimates)) {
    char pct[32];
    std::snprintf(pct, sizeof pct, "%.2f", b.cumulativePercent);
    t.rows.push_back({b.switches, b.count, std::string(pct)});
  }
  render(c.out, c.format(), t);
  return 0;
}

int cmdIxpArchitectures(const Context& c, const IxpArgs& a) {
  ixp::parseEstimator(a.estimator);
  if (!a.input.empty()) emitSizes(c, a);
  const auto cat = catalog::loadCatalog(c.catalogDir());
  const auto table = ixp::scoreIxpArchitectures(cat, a.profilesDir, findInstance(a.instance, a.instancesDir), c.jobs());
  for (const auto& w : table.warnings) c.warn(w);
  const fs::path dir = a.outDir;
  const std::string csv = ixp::architecturesCsv(table);
  const std::string md = ixp::architecturesMarkdown(table);
  writeFile(dir / "arch_scores.csv", csv);
  writeFile(dir / "arch_scores.md", md);
  switch (c.format()) {
    case Format::Csv: c.out << csv; break;
    case Format::Markdown: c.out << md; break;
    case Format::Json: {
      json arr = json::array();
      for (const auto& r : table.rows) {
        arr.push_back({{"architecture", r.profile.name},
                       {"modules", r.modules},
                       {"delta", r.delta},
                       {"score", r.score.render(2)}});
      }
      c.out << arr.dump(2) << '\n';
      break;
    }
  }
  return 0;
}

int cmdIxpFetch(const Context& c, const IxpArgs& a) {
  fetch::FetchOptions opts;
  opts.baseUrl = a.baseUrl;
  opts.cacheDir = a.cacheDir;
  opts.refresh = a.refresh;
  writeFile(a.fetchOut, fetch::fetchPeeringDb(opts));
  if (!c.g.quiet) c.err << "wrote " << a.fetchOut << '\n';
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env) {
  CLI::App app{"Network parameter space analysis over YANG model catalogs", "oplex"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--catalog", g.catalogDir, "Catalog directory (default: $OPLEX_CATALOG, then ./oplex-catalog)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "markdown", "json"}));
  app.add_flag("-q,--quiet", g.quiet, "Suppress diagnostics on stderr");
  app.add_option("-j,--jobs", g.jobs, "Parallel workers (default: hardware threads)");

  IngestArgs ingest;
  auto* ingestCmd = app.add_subcommand("ingest", "Extract parameters from YANG modules or tree diagrams");
  ingestCmd->add_option("--vendor", ingest.vendor, "Vendor the modules belong to")->required();
  ingestCmd->add_option("--frontend", ingest.frontend, "Input kind")->check(CLI::IsMember({"native", "tree", "tree-diagram"}));
  ingestCmd->add_option("--search-path", ingest.searchPaths, "Dependency modules used for resolution only");
  ingestCmd->add_option("--prefix-source", ingest.prefixSources, "YANG sources giving prefix bindings (tree frontend)");
  auto* featureOpt = ingestCmd->add_option("--features", ingest.features, "Enabled features; default keeps every if-feature node");
  ingestCmd->add_option("paths", ingest.paths, "Files or directories")->required();

  ScoreArgs score;
  auto* scoreCmd = app.add_subcommand("score", "Parameter space dimension of an architecture profile");
  scoreCmd->add_option("--profile", score.profile, "Profile name or file");
  scoreCmd->add_option("--baseline", score.baseline, "Baseline profile for the score ratio");
  scoreCmd->add_option("--instance", score.instance, "Instance profile name or file");
  scoreCmd->add_option("--mode", score.mode, "Report mode")->check(CLI::IsMember({"device", "module", "agnostic"}));
  scoreCmd->add_flag("--agnostic", score.agnostic, "All modules of --vendor, all sizes 1");
  scoreCmd->add_option("--vendor", score.vendor, "Vendor (overrides the profile's)");
  scoreCmd->add_flag("--explain", score.explain, "List function matches and per-module dimensions");
  scoreCmd->add_option("--profiles-dir", score.profilesDir, "Directory of architecture profiles");
  scoreCmd->add_option("--instances-dir", score.instancesDir, "Directory of instance profiles");

  QueryArgs query;
  auto* queryCmd = app.add_subcommand("query", "List catalog entries");
  queryCmd->add_option("--vendor", query.vendor, "Exact vendor");
  queryCmd->add_option("--module", query.module, "Case-insensitive module name substring");
  queryCmd->add_flag("--records", query.records, "List individual parameter records");

  QueryArgs verify;
  auto* verifyCmd = app.add_subcommand("verify", "Compare native and tree-diagram entries");
  verifyCmd->add_option("--vendor", verify.vendor, "Exact vendor");
  verifyCmd->add_option("--module", verify.module, "Case-insensitive module name substring");

  IxpArgs ixpArgs;
  auto* ixpCmd = app.add_subcommand("ixp", "IXP size estimation and architecture scoring");
  ixpCmd->require_subcommand(1);
  auto* sizesCmd = ixpCmd->add_subcommand("sizes", "Classify IXPs and estimate switch counts");
  sizesCmd->add_option("input", ixpArgs.input, "PeeringDB-style JSON export")->required()->check(CLI::ExistingFile);
  auto* archCmd = ixpCmd->add_subcommand("architectures", "Score the IXP architecture profiles");
  archCmd->add_option("input", ixpArgs.input, "Optional PeeringDB-style export; also writes size estimates")
      ->check(CLI::ExistingFile);
  archCmd->add_option("--profiles-dir", ixpArgs.profilesDir, "Directory of architecture profiles");
  archCmd->add_option("--instance", ixpArgs.instance, "Instance profile name or file");
  archCmd->add_option("--instances-dir", ixpArgs.instancesDir, "Directory of instance profiles");
  for (auto* sub : {sizesCmd, archCmd}) {
    sub->add_option("--out", ixpArgs.outDir, "Output directory");
    sub->add_option("--estimator", ixpArgs.estimator, "Switch estimator")->check(CLI::IsMember({"floor", "ceil"}));
  }
  auto* fetchCmd = ixpCmd->add_subcommand("fetch", "Download a PeeringDB export, reusing cached tables");
  fetchCmd->add_option("--cache", ixpArgs.cacheDir, "Cache directory");
  fetchCmd->add_option("--base-url", ixpArgs.baseUrl, "PeeringDB base URL");
  fetchCmd->add_option("-o,--out", ixpArgs.fetchOut, "Combined export file");
  fetchCmd->add_flag("--refresh", ixpArgs.refresh, "Ignore cached tables");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  ingest.featuresGiven = featureOpt->count() > 0;

  const Context ctx{g, env, out, err};
  try {
    if (*ingestCmd) return cmdIngest(ctx, ingest);
    if (*scoreCmd) return cmdScore(ctx, score);
    if (*queryCmd) return cmdQuery(ctx, query);
    if (*verifyCmd) return cmdVerify(ctx, verify);
    if (*sizesCmd) return cmdIxpSizes(ctx, ixpArgs);
    if (*archCmd) return cmdIxpArchitectures(ctx, ixpArgs);
    if (*fetchCmd) return cmdIxpFetch(ctx, ixpArgs);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace oplex::cli
