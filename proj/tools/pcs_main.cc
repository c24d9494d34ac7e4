// Copyright 2026 The PCS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// pcs: run a patent citation spectroscopy query from the command line.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pcs/cache_store.h"
#include "pcs/error.h"
#include "pcs/patentsview_client.h"
#include "pcs/pipeline.h"

namespace {

constexpr int kUsageExit = 2;

struct Flags {
  std::string query;
  std::string fixture;
  std::string fixture_dir = PCS_DEFAULT_FIXTURE_DIR;
  std::string mode = "pcs";
  std::string config_file;
  std::string base_url;
  std::string dialect;
  std::string cache_dir;
  bool no_cache = false;
  std::string output;
  std::string format = "report";
  bool deterministic = false;
  std::size_t top_k = 5;
};

std::string PeakText(std::optional<pcs::Peak> const& p) {
  if (!p) return "none";
  return std::to_string(p->year) + " (US" + p->patent.str() + ")";
}

void Emit(std::string const& text, std::string const& output) {
  if (output.empty() || output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(output, std::ios::binary);
  if (!(out << text)) {
    throw pcs::Error(pcs::ErrorCode::kIoError, "cannot write " + output);
  }
}

int Run(Flags const& f, CLI::App const& app) {
  pcs::ClientConfig config;
  if (!f.config_file.empty()) config = pcs::LoadClientConfig(f.config_file);
  pcs::ApplyEnvironment(config);
  if (app.count("--base-url")) config.base_url = f.base_url;
  if (app.count("--dialect")) config.dialect = f.dialect;
  if (app.count("--cache-dir")) config.cache_dir = f.cache_dir;
  if (f.no_cache) config.use_cache = false;

  auto mode = pcs::ParseMode(f.mode);
  if (!mode) {
    throw pcs::Error(pcs::ErrorCode::kInvalidArgument,
                     "--mode must be pcs or rpys");
  }

  auto client = std::make_shared<pcs::PatentsViewClient>(
      config, std::make_shared<pcs::HttplibTransport>(config.timeout));
  client->set_warning_sink(
      [](std::string const& msg) { std::cerr << "pcs: warning: " << msg << "\n"; });
  pcs::Pipeline pipeline(client, f.fixture_dir);

  pcs::RunRequest request;
  if (app.count("--query") || f.fixture.empty()) request.raw_query = f.query;
  if (!f.fixture.empty()) request.fixture = f.fixture;
  request.mode = *mode;
  request.top_k = f.top_k;

  auto const report = pipeline.Run(request);
  Emit(f.format == "table" ? pcs::RenderReportTable(report)
                           : pcs::RenderReportJson(report, f.deterministic),
       f.output);

  std::cerr << "pcs: " << report.stats.citing_count << " citing patents, "
            << report.stats.unique_cited_count << " unique references; pcs peak "
            << PeakText(report.comparison.pcs) << ", rpys peak "
            << PeakText(report.comparison.rpys)
            << (report.comparison.agree() ? "; modes agree" : "; modes differ")
            << "\n";
  if (!report.landmark) {
    std::cerr << "pcs: NoPositivePeak: no year has a positive "
              << pcs::ModeName(*mode) << " score\n";
    return static_cast<int>(pcs::ErrorCode::kNoPositivePeak);
  }
  return 0;
}

int RunCache(std::string const& action, Flags const& f, CLI::App const& app) {
  pcs::ClientConfig config;
  if (!f.config_file.empty()) config = pcs::LoadClientConfig(f.config_file);
  pcs::ApplyEnvironment(config);
  if (app.count("--cache-dir")) config.cache_dir = f.cache_dir;
  pcs::CacheStore store(config.cache_dir);
  if (action == "clear") {
    std::cout << "removed " << store.Clear() << " entries from "
              << store.dir().string() << "\n";
    return 0;
  }
  for (auto const& key : store.Keys()) {
    auto const lookup = store.Get(key);
    if (lookup.entry) {
      std::cout << key << "\t" << lookup.entry->api_snapshot_date << "\t"
                << lookup.entry->payload.patents.size() << "\t"
                << lookup.entry->query << "\n";
    } else {
      std::cout << key << "\tcorrupt\t-\t" << lookup.diagnostic << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Patent citation spectroscopy: find the landmark patent behind a "
               "keyword query"};
  Flags f;
  app.add_option("--query", f.query,
                 "Comma-separated keywords and \"quoted phrases\" (OR-combined)")
      ->envname("PCS_QUERY");
  app.add_option("--fixture", f.fixture, "Replay a bundled fixture by name")
      ->envname("PCS_FIXTURE");
  app.add_option("--fixture-dir", f.fixture_dir, "Directory holding fixtures")
      ->envname("PCS_FIXTURE_DIR");
  app.add_option("--mode", f.mode, "pcs (normalized) or rpys (plain detrended)")
      ->envname("PCS_MODE")
      ->check(CLI::IsMember({"pcs", "rpys"}));
  app.add_option("--config", f.config_file, "JSON client configuration file")
      ->envname("PCS_CONFIG");
  app.add_option("--base-url", f.base_url, "API base URL (env PCS_BASE_URL)");
  app.add_option("--dialect", f.dialect, "API dialect (env PCS_DIALECT)");
  app.add_option("--cache-dir", f.cache_dir, "Cache directory (env PCS_CACHE_DIR)");
  app.add_flag("--no-cache", f.no_cache, "Bypass the response cache")
      ->envname("PCS_NO_CACHE");
  app.add_option("--output", f.output, "Write the report here instead of stdout")
      ->envname("PCS_OUTPUT");
  app.add_option("--format", f.format, "report (JSON) or table (CSV)")
      ->envname("PCS_FORMAT")
      ->check(CLI::IsMember({"report", "table"}));
  app.add_flag("--deterministic", f.deterministic,
               "Omit timestamps and timings from the report")
      ->envname("PCS_DETERMINISTIC");
  app.add_option("--top-k", f.top_k, "Runner-up peaks to list")
      ->envname("PCS_TOP_K");

  auto* cache = app.add_subcommand("cache", "Inspect or clear the response cache");
  cache->fallthrough();  // accept --cache-dir and --config after the action
  std::string action = "list";
  cache->add_option("action", action, "list or clear")
      ->check(CLI::IsMember({"list", "clear"}));

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return kUsageExit;
  }

  try {
    if (cache->parsed()) return RunCache(action, f, app);
    return Run(f, app);
  } catch (pcs::Error const& e) {
    std::cerr << "pcs: " << e.name() << ": " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (std::exception const& e) {
    std::cerr << "pcs: Internal: " << e.what() << "\n";
    return 1;
  }
}
