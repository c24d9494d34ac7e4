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

#include "pcs/pipeline.h"

#include <chrono>
#include <sstream>

#include "json.hpp"
#include "pcs/error.h"

namespace pcs {
namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

double MillisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string ExactString(Score const& s) {
  std::ostringstream os;
  os << s;
  return os.str();
}

json PeakJson(Peak const& p, std::string const& url_template) {
  return {{"year", p.year},
          {"patent_id", p.patent.str()},
          {"score", p.score.ToDouble()},
          {"document_url", DocumentUrl(url_template, p.patent)}};
}

std::optional<Peak> BestPeak(std::vector<YearBin> const& bins, Mode mode) {
  auto peaks = FindPeaks(BuildSpectrum(bins, mode));
  if (peaks.empty()) return std::nullopt;
  return peaks.front();
}

}  // namespace

std::string DocumentUrl(std::string const& url_template, PatentId const& id) {
  std::string out = url_template;
  static constexpr std::string_view kPlaceholder = "{id}";
  for (auto pos = out.find(kPlaceholder); pos != std::string::npos;
       pos = out.find(kPlaceholder, pos + id.str().size())) {
    out.replace(pos, kPlaceholder.size(), id.str());
  }
  return out;
}

RunReport Analyze(std::string canonical_query, CacheEntry const& data,
                  Mode mode, std::size_t top_k) {
  RunReport report;
  report.query = std::move(canonical_query);
  report.source = data.payload.source;
  report.api_snapshot_date = data.api_snapshot_date;

  auto t = Clock::now();
  auto aggregation = Aggregate(data.payload);
  report.stats = aggregation.stats;
  report.timings_ms.emplace_back("aggregate", MillisSince(t));

  t = Clock::now();
  report.comparison.pcs = BestPeak(aggregation.bins, Mode::kPcs);
  report.comparison.rpys = BestPeak(aggregation.bins, Mode::kRpys);
  report.spectrum = BuildSpectrum(std::move(aggregation.bins), mode);
  report.timings_ms.emplace_back("spectroscopy", MillisSince(t));

  t = Clock::now();
  try {
    report.landmark =
        SelectLandmark(report.spectrum, report.stats.unique_cited_count, top_k);
  } catch (Error const& e) {
    if (e.code() != ErrorCode::kNoPositivePeak) throw;
  }
  report.timings_ms.emplace_back("select", MillisSince(t));
  return report;
}

bool Pipeline::IsCached(Query const& query) const {
  if (!client_->config().use_cache) return false;
  CacheStore cache(client_->config().cache_dir);
  return cache.Get(client_->KeyFor(query)).status == CacheStatus::kHit;
}

RunReport Pipeline::Run(RunRequest const& request) const {
  std::vector<std::pair<std::string, double>> timings;
  auto t = Clock::now();
  std::optional<Query> query;
  if (request.raw_query) {
    query = ParseQuery(*request.raw_query);
  } else if (!request.fixture) {
    throw Error(ErrorCode::kEmptyQuery, "a query is required without a fixture");
  }
  timings.emplace_back("parse", MillisSince(t));

  t = Clock::now();
  CacheEntry data;
  if (request.fixture) {
    data = LoadFixture(fixture_dir_, *request.fixture);
    auto const recorded = ParseQuery(data.query);
    if (query && !(*query == recorded)) {
      throw Error(ErrorCode::kFixtureQueryMismatch,
                  "fixture '" + *request.fixture + "' was recorded for query " +
                      RenderQuery(recorded) + ", not " + RenderQuery(*query));
    }
    query = recorded;
  } else {
    data = client_->FetchEntry(*query);
  }
  timings.emplace_back("fetch", MillisSince(t));

  auto report = Analyze(RenderQuery(*query), data, request.mode, request.top_k);
  timings.insert(timings.end(), report.timings_ms.begin(),
                 report.timings_ms.end());
  report.timings_ms = std::move(timings);
  return report;
}

std::string RenderReportJson(RunReport const& report, bool deterministic,
                             std::string const& url_template) {
  auto const& s = report.spectrum;
  json years = json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto const year = s.YearAt(i);
    json row = {{"year", year},
                {"c_total", s.c()[i]},
                {"f", s.f()[i].ToDouble()},
                {"pcs", s.pcs()[i].ToDouble()},
                {"top_patent_id", nullptr},
                {"top_patent_count", 0}};
    if (auto const* bin = s.BinFor(year)) {
      row["top_patent_id"] = bin->top_id.str();
      row["top_patent_count"] = bin->top_count;
    }
    years.push_back(std::move(row));
  }

  json landmark;
  if (report.landmark) {
    auto const& l = *report.landmark;
    json runner_ups = json::array();
    for (auto const& p : l.runner_ups) {
      runner_ups.push_back(PeakJson(p, url_template));
    }
    landmark = {{"status", "found"},
                {"patent_id", l.patent.str()},
                {"year", l.year},
                {"score", l.score.ToDouble()},
                {"score_exact", ExactString(l.score)},
                {"odds", l.odds},
                {"document_url", DocumentUrl(url_template, l.patent)},
                {"runner_ups", std::move(runner_ups)}};
  } else {
    landmark = {{"status", ErrorName(ErrorCode::kNoPositivePeak)}};
  }

  auto peak = [&](std::optional<Peak> const& p) -> json {
    return p ? PeakJson(*p, url_template) : json();
  };
  json doc = {
      {"query", report.query},
      {"mode", ModeName(s.mode())},
      {"source", DataSourceName(report.source)},
      {"api_snapshot_date", report.api_snapshot_date},
      {"stats",
       {{"citing_count", report.stats.citing_count},
        {"unique_cited_count", report.stats.unique_cited_count},
        {"dropped_unknown_year", report.stats.dropped_unknown_year},
        {"citation_pairs", report.stats.citation_pairs}}},
      {"spectrum",
       {{"start_year", s.start_year()},
        {"end_year", s.end_year()},
        {"years", std::move(years)}}},
      {"landmark", std::move(landmark)},
      {"comparison",
       {{"pcs_peak", peak(report.comparison.pcs)},
        {"rpys_peak", peak(report.comparison.rpys)},
        {"modes_agree", report.comparison.agree()}}},
  };
  if (!deterministic) {
    json timings = json::object();
    for (auto const& [stage, ms] : report.timings_ms) timings[stage] = ms;
    doc["timings_ms"] = std::move(timings);
    doc["generated_at"] = UtcTimestamp();
  }
  return doc.dump(2) + "\n";
}

std::string RenderReportTable(RunReport const& report) {
  auto const& s = report.spectrum;
  std::string out = "year,c_total,f,pcs,top_patent_id,top_patent_count\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto const year = s.YearAt(i);
    auto const* bin = s.BinFor(year);
    out += std::to_string(year) + ',' + std::to_string(s.c()[i]) + ',' +
           json(s.f()[i].ToDouble()).dump() + ',' +
           json(s.pcs()[i].ToDouble()).dump() + ',' +
           (bin ? bin->top_id.str() : std::string()) + ',' +
           std::to_string(bin ? bin->top_count : 0) + '\n';
  }
  return out;
}

}  // namespace pcs
