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

#include <gtest/gtest.h>

#include <fstream>

#include "json.hpp"
#include "pcs/error.h"
#include "test_support.h"

namespace pcs {
namespace {

using json = nlohmann::json;
using testing::TempDir;

constexpr char kRnaiQuery[] = R"(RNAi, "interference RNA", siRNA, "RNA interference")";

class NoNetwork : public HttpTransport {
 public:
  HttpResult Send(ApiRequest const&) override {
    ++calls;
    return {false, 0, "", "offline"};
  }
  int calls = 0;
};

// One patent citing two references per cited year in `years`.
class TinyApi : public HttpTransport {
 public:
  HttpResult Send(ApiRequest const&) override {
    json cited = json::array();
    cited.push_back({{"cited_patent_number", "4000001"}, {"cited_patent_date", "1990-01-01"}});
    cited.push_back({{"cited_patent_number", "4000002"}, {"cited_patent_date", "1991-01-01"}});
    cited.push_back({{"cited_patent_number", "4000003"}, {"cited_patent_date", "1991-01-01"}});
    cited.push_back({{"cited_patent_number", "4000004"}, {"cited_patent_date", "1992-01-01"}});
    json body = {{"total_patent_count", 1},
                 {"patents", {{{"patent_number", "9999999"},
                               {"patent_date", "2001-01-01"},
                               {"patent_title", "t"},
                               {"cited_patents", cited}}}}};
    return {true, 200, body.dump(), ""};
  }
};

std::shared_ptr<PatentsViewClient> OfflineClient(std::filesystem::path cache_dir = {}) {
  ClientConfig config;
  config.max_retries = 0;
  config.use_cache = !cache_dir.empty();
  config.cache_dir = cache_dir;
  return std::make_shared<PatentsViewClient>(config, std::make_shared<NoNetwork>());
}

Pipeline FixturePipeline() { return Pipeline(OfflineClient(), testing::FixtureDir()); }

ErrorCode RunCode(Pipeline const& p, RunRequest const& r) {
  try {
    p.Run(r);
  } catch (Error const& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::kInvalidArgument;
}

// A fixture whose corpus cites a single patent in a single year.
void WriteSingleYearFixture(std::filesystem::path const& dir) {
  CacheEntry e;
  e.query = "lonely";
  e.dialect = "patentsview-legacy";
  e.key = CacheKey(ParseQuery(e.query), e.dialect, 1000);
  e.created_at = "2026-10-16T00:00:00Z";
  e.api_snapshot_date = "synthetic";
  e.payload.pages_fetched = 1;
  e.payload.total_reported = 2;
  e.payload.source = DataSource::kFixture;
  for (auto id : {"8000001", "8000002"}) {
    e.payload.patents.push_back(
        {PatentId::Parse(id), "t", {2010, 1, 1}, {{PatentId::Parse("5000000"), 1999}}});
  }
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "lonely.pcs-cache") << EncodeEntry(e);
}

TEST(DocumentUrl, FillsEveryPlaceholder) {
  auto const id = PatentId::Parse("6506559");
  EXPECT_EQ(DocumentUrl(kDefaultDocumentUrlTemplate, id),
            "https://patents.google.com/patent/US6506559");
  EXPECT_EQ(DocumentUrl("x/{id}/{id}", id), "x/6506559/6506559");
  EXPECT_EQ(DocumentUrl("static", id), "static");
}

TEST(Pipeline, RnaiFixtureByName) {
  auto report = FixturePipeline().Run({std::nullopt, "rnai", Mode::kPcs, 5});
  EXPECT_EQ(report.query, kRnaiQuery);
  EXPECT_EQ(report.source, DataSource::kFixture);
  EXPECT_EQ(report.stats.citing_count, 1217);
  EXPECT_EQ(report.stats.unique_cited_count, 4065);
  ASSERT_TRUE(report.landmark);
  EXPECT_EQ(report.landmark->patent.str(), "6506559");
  EXPECT_EQ(report.landmark->year, 2003);
  EXPECT_EQ(report.comparison.pcs->year, 2003);
  EXPECT_EQ(report.comparison.rpys->year, 2009);
  EXPECT_FALSE(report.comparison.agree());
  std::vector<std::string> stages;
  for (auto const& [stage, ms] : report.timings_ms) stages.push_back(stage);
  EXPECT_EQ(stages, (std::vector<std::string>{"parse", "fetch", "aggregate",
                                              "spectroscopy", "select"}));
}

TEST(Pipeline, FixtureWithEquivalentQuery) {
  auto report = FixturePipeline().Run(
      {R"(  RNAi,"interference RNA",siRNA , "RNA interference")", "rnai", Mode::kRpys, 5});
  ASSERT_TRUE(report.landmark);
  EXPECT_EQ(report.landmark->year, 2009);
  EXPECT_EQ(report.landmark->patent.str(), "7595387");
  EXPECT_EQ(report.landmark->mode, Mode::kRpys);
}

TEST(Pipeline, Errors) {
  auto const p = FixturePipeline();
  EXPECT_EQ(RunCode(p, {std::nullopt, std::nullopt, Mode::kPcs, 5}), ErrorCode::kEmptyQuery);
  EXPECT_EQ(RunCode(p, {"", std::nullopt, Mode::kPcs, 5}), ErrorCode::kEmptyQuery);
  EXPECT_EQ(RunCode(p, {"\"open", std::nullopt, Mode::kPcs, 5}),
            ErrorCode::kUnterminatedPhrase);
  EXPECT_EQ(RunCode(p, {std::nullopt, "nope", Mode::kPcs, 5}), ErrorCode::kUnknownFixture);
  EXPECT_EQ(RunCode(p, {"cholesterol", "rnai", Mode::kPcs, 5}),
            ErrorCode::kFixtureQueryMismatch);
  EXPECT_EQ(RunCode(p, {"cholesterol", std::nullopt, Mode::kPcs, 5}),
            ErrorCode::kApiUnreachable);
}

TEST(Pipeline, NoPositivePeakKeepsSpectrum) {
  TempDir tmp;
  WriteSingleYearFixture(tmp.path());
  Pipeline p(OfflineClient(), tmp.path());
  auto report = p.Run({std::nullopt, "lonely", Mode::kPcs, 5});
  EXPECT_FALSE(report.landmark);
  EXPECT_EQ(report.spectrum.size(), 1u);
  EXPECT_EQ(report.spectrum.c()[0], 2);
  auto doc = json::parse(RenderReportJson(report, true));
  EXPECT_EQ(doc["landmark"]["status"], "NoPositivePeak");
  EXPECT_TRUE(doc["comparison"]["pcs_peak"].is_null());
}

TEST(Pipeline, LiveFetchIsCached) {
  TempDir tmp;
  ClientConfig config;
  config.cache_dir = tmp.path();
  auto client = std::make_shared<PatentsViewClient>(config, std::make_shared<TinyApi>(),
                                                    [](std::chrono::milliseconds) {});
  Pipeline p(client, testing::FixtureDir());
  auto const q = ParseQuery("tiny");
  EXPECT_FALSE(p.IsCached(q));
  auto live = p.Run({"tiny", std::nullopt, Mode::kPcs, 5});
  EXPECT_EQ(live.source, DataSource::kLive);
  EXPECT_TRUE(p.IsCached(q));
  auto cached = p.Run({"tiny", std::nullopt, Mode::kPcs, 5});
  EXPECT_EQ(cached.source, DataSource::kCache);
  // c = 1, 2, 1: the middle year wins with half its citations on top.
  ASSERT_TRUE(cached.landmark);
  EXPECT_EQ(cached.landmark->year, 1991);
  EXPECT_EQ(cached.landmark->score, Score::Ratio(1, 2));
  EXPECT_EQ(cached.landmark->patent.str(), "4000002");
}

TEST(RenderReportJson, DeterministicModeIsByteStable) {
  auto const p = FixturePipeline();
  auto a = RenderReportJson(p.Run({std::nullopt, "cholesterol", Mode::kPcs, 5}), true);
  auto b = RenderReportJson(p.Run({std::nullopt, "cholesterol", Mode::kPcs, 5}), true);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.find("generated_at"), std::string::npos);
  EXPECT_EQ(a.find("timings_ms"), std::string::npos);
  auto live = json::parse(
      RenderReportJson(p.Run({std::nullopt, "cholesterol", Mode::kPcs, 5}), false));
  EXPECT_TRUE(live.contains("generated_at"));
  EXPECT_TRUE(live["timings_ms"].contains("select"));
}

TEST(RenderReportJson, Contents) {
  auto report = FixturePipeline().Run({std::nullopt, "cholesterol", Mode::kPcs, 3});
  auto doc = json::parse(RenderReportJson(report, true, "https://example.test/{id}"));
  EXPECT_EQ(doc["query"], "cholesterol");
  EXPECT_EQ(doc["mode"], "pcs");
  EXPECT_EQ(doc["source"], "fixture");
  EXPECT_EQ(doc["stats"]["unique_cited_count"], 11326);
  auto const& l = doc["landmark"];
  EXPECT_EQ(l["status"], "found");
  EXPECT_EQ(l["patent_id"], "4681893");
  EXPECT_EQ(l["year"], 1987);
  EXPECT_EQ(l["document_url"], "https://example.test/4681893");
  EXPECT_DOUBLE_EQ(l["odds"].get<double>(), 1.0 / 11326);
  EXPECT_EQ(l["runner_ups"].size(), 3u);
  EXPECT_EQ(l["score"].get<double>(), report.landmark->score.ToDouble());
  auto const& years = doc["spectrum"]["years"];
  EXPECT_EQ(years.size(), report.spectrum.size());
  for (auto const& y : years) {
    if (y["year"] == 2011) {
      EXPECT_EQ(y["top_patent_id"], "8030457");
    } else if (y["year"] == 2013) {
      EXPECT_EQ(y["top_patent_id"], "8563698");
    }
  }
  EXPECT_EQ(doc["comparison"]["pcs_peak"]["year"], 1987);
}

TEST(RenderReportTable, OneRowPerYear) {
  auto report = FixturePipeline().Run({std::nullopt, "rnai", Mode::kPcs, 5});
  auto table = RenderReportTable(report);
  EXPECT_EQ(table.rfind("year,c_total,f,pcs,top_patent_id,top_patent_count\n", 0), 0u);
  EXPECT_EQ(static_cast<std::size_t>(std::count(table.begin(), table.end(), '\n')),
            report.spectrum.size() + 1);
  EXPECT_NE(table.find("\n2006,"), std::string::npos);
  auto const row = table.substr(table.find("\n2006,") + 1);
  EXPECT_NE(row.substr(0, row.find('\n')).find(",7056704,"), std::string::npos);
}

}  // namespace
}  // namespace pcs
