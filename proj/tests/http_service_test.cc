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

#include "pcs/http_service.h"

#include <gtest/gtest.h>

#include <fstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "pcs/error.h"
#include "test_support.h"

namespace pcs {
namespace {

using json = nlohmann::json;
using testing::TempDir;
using namespace std::chrono_literals;

constexpr char kRnaiQuery[] = R"(RNAi, "interference RNA", siRNA, "RNA interference")";

// Answers every request after `delay`, or fails when `delay` is negative.
class SlowApi : public HttpTransport {
 public:
  explicit SlowApi(std::chrono::milliseconds delay) : delay_(delay) {}
  HttpResult Send(ApiRequest const&) override {
    if (delay_.count() < 0) return {false, 0, "", "offline"};
    std::this_thread::sleep_for(delay_);
    json cited = {{{"cited_patent_number", "4000001"}, {"cited_patent_date", "1990-01-01"}},
                  {{"cited_patent_number", "4000002"}, {"cited_patent_date", "1991-01-01"}},
                  {{"cited_patent_number", "4000003"}, {"cited_patent_date", "1992-01-01"}}};
    json body = {{"total_patent_count", 2},
                 {"patents",
                  {{{"patent_number", "9000001"}, {"patent_date", "2001-01-01"},
                    {"patent_title", "a"}, {"cited_patents", cited}},
                   {{"patent_number", "9000002"}, {"patent_date", "2001-01-01"},
                    {"patent_title", "b"}, {"cited_patents", {cited[1]}}}}}};
    return {true, 200, body.dump(), ""};
  }

 private:
  std::chrono::milliseconds delay_;
};

struct ServiceOptions {
  std::chrono::milliseconds api_delay{-1};
  std::filesystem::path cache_dir;  // empty: cache disabled
  std::filesystem::path fixture_dir = testing::FixtureDir();
  ServiceConfig config;
};

std::shared_ptr<SpectrumService> MakeService(ServiceOptions o) {
  ClientConfig client;
  client.max_retries = 0;
  client.use_cache = !o.cache_dir.empty();
  client.cache_dir = o.cache_dir;
  auto pv = std::make_shared<PatentsViewClient>(
      client, std::make_shared<SlowApi>(o.api_delay), [](std::chrono::milliseconds) {});
  auto pipeline = std::make_shared<Pipeline>(pv, o.fixture_dir);
  return std::make_shared<SpectrumService>(o.config, pipeline);
}

json Body(ServiceResponse const& r) { return json::parse(r.body); }

TEST(SpectrumService, RnaiFixture) {
  auto svc = MakeService({});
  auto r = svc->HandleSpectrum(kRnaiQuery, "pcs", "rnai");
  ASSERT_EQ(r.status, 200) << r.body;
  auto b = Body(r);
  EXPECT_EQ(b["citing_count"], 1217);
  EXPECT_EQ(b["unique_cited_count"], 4065);
  EXPECT_EQ(b["mode"], "pcs");
  EXPECT_EQ(b["source"], "fixture");
  EXPECT_EQ(b["landmark"]["patent_id"], "6506559");
  EXPECT_EQ(b["landmark"]["year"], 2003);
  EXPECT_EQ(b["landmark"]["document_url"], "https://patents.google.com/patent/US6506559");
  bool saw_2006 = false;
  for (auto const& y : b["years"]) {
    if (y["top_patent_id"].is_null()) {
      EXPECT_EQ(y["c_total"], 0);
      EXPECT_TRUE(y["document_url"].is_null());
      continue;
    }
    // The click-through contract: document_url names that year's top patent.
    EXPECT_EQ(y["document_url"],
              "https://patents.google.com/patent/US" + y["top_patent_id"].get<std::string>());
    if (y["year"] == 2006) {
      saw_2006 = true;
      EXPECT_EQ(y["top_patent_id"], "7056704");
    }
  }
  EXPECT_TRUE(saw_2006);
}

TEST(SpectrumService, RpysMode) {
  auto svc = MakeService({});
  auto b = Body(svc->HandleSpectrum(kRnaiQuery, "rpys", "rnai"));
  EXPECT_EQ(b["mode"], "rpys");
  EXPECT_EQ(b["landmark"]["year"], 2009);
}

TEST(SpectrumService, CholesterolFixture) {
  auto svc = MakeService({});
  auto r = svc->HandleSpectrum("cholesterol", "", "cholesterol");
  ASSERT_EQ(r.status, 200);
  auto b = Body(r);
  EXPECT_EQ(b["landmark"]["patent_id"], "4681893");
  std::map<int, std::string> tops;
  for (auto const& y : b["years"]) {
    if (!y["top_patent_id"].is_null()) tops[y["year"]] = y["top_patent_id"];
  }
  EXPECT_EQ(tops[2011], "8030457");
  EXPECT_EQ(tops[2013], "8563698");
}

TEST(SpectrumService, ResponsesAreByteIdentical) {
  auto svc = MakeService({});
  EXPECT_EQ(svc->HandleSpectrum("cholesterol", "pcs", "cholesterol").body,
            svc->HandleSpectrum("cholesterol", "pcs", "cholesterol").body);
}

TEST(SpectrumService, ErrorStatuses) {
  auto svc = MakeService({});
  auto expect = [&](ServiceResponse const& r, int status, std::string const& name) {
    EXPECT_EQ(r.status, status) << r.body;
    EXPECT_EQ(Body(r)["error"], name);
  };
  expect(svc->HandleSpectrum(",,,", "pcs", std::nullopt), 400, "EmptyQuery");
  expect(svc->HandleSpectrum("\"open", "pcs", std::nullopt), 400, "UnterminatedPhrase");
  expect(svc->HandleSpectrum("x", "both", std::nullopt), 400, "InvalidArgument");
  expect(svc->HandleSpectrum("x", "pcs", "nope"), 404, "UnknownFixture");
  expect(svc->HandleSpectrum("x", "pcs", "rnai"), 400, "FixtureQueryMismatch");
  expect(svc->HandleSpectrum("x", "pcs", std::nullopt), 502, "ApiUnreachable");
}

TEST(SpectrumService, NoPositivePeakIs422WithSpectrum) {
  ServiceOptions o;
  o.api_delay = 0ms;
  auto svc = MakeService(o);
  // The live corpus gives c = 1, 2, 1: a positive middle year.
  ASSERT_EQ(svc->HandleSpectrum("x", "pcs", std::nullopt).status, 200);
  // A flat spectrum has no positive year in either mode.
  TempDir tmp;
  CacheEntry e;
  e.query = "flat";
  e.dialect = "patentsview-legacy";
  e.key = CacheKey(ParseQuery("flat"), e.dialect, 1000);
  e.payload.pages_fetched = 1;
  e.payload.total_reported = 1;
  e.payload.patents.push_back({PatentId::Parse("9"), "t", {2010, 1, 1},
                               {{PatentId::Parse("1"), 1990},
                                {PatentId::Parse("2"), 1991},
                                {PatentId::Parse("3"), 1992}}});
  std::ofstream(tmp.path() / "flat.pcs-cache") << EncodeEntry(e);
  o.fixture_dir = tmp.path();
  auto flat = MakeService(o)->HandleSpectrum("flat", "rpys", "flat");
  EXPECT_EQ(flat.status, 422);
  auto b = Body(flat);
  EXPECT_EQ(b["error"], "NoPositivePeak");
  EXPECT_TRUE(b["landmark"].is_null());
  EXPECT_EQ(b["years"].size(), 3u);
}

TEST(SpectrumService, SlowLiveFetchBecomesJob) {
  TempDir tmp;
  ServiceOptions o;
  o.api_delay = 300ms;
  o.cache_dir = tmp.path();
  o.config.async_threshold = 20ms;
  auto svc = MakeService(o);
  auto r = svc->SubmitSpectrum("slow", "pcs", std::nullopt);
  ASSERT_EQ(r.status, 202) << r.body;
  auto const job = Body(r);
  EXPECT_EQ(job["status"], "running");
  auto const id = job["job_id"].get<std::string>();
  EXPECT_EQ(job["poll_url"], "/api/jobs/" + id);

  ServiceResponse polled;
  for (int i = 0; i < 200; ++i) {
    polled = svc->HandleJob(id);
    if (polled.status != 202) break;
    std::this_thread::sleep_for(10ms);
  }
  ASSERT_EQ(polled.status, 200) << polled.body;
  EXPECT_EQ(Body(polled)["source"], "live");
  EXPECT_EQ(Body(polled)["landmark"]["patent_id"], "4000002");
  EXPECT_EQ(svc->HandleJob("job-999").status, 404);

  // Now cached: answered synchronously.
  auto again = svc->SubmitSpectrum("slow", "pcs", std::nullopt);
  EXPECT_EQ(again.status, 200);
  EXPECT_EQ(Body(again)["source"], "cache");
}

TEST(SpectrumService, FastLiveFetchStaysSynchronous) {
  ServiceOptions o;
  o.api_delay = 0ms;
  auto svc = MakeService(o);
  EXPECT_EQ(svc->SubmitSpectrum("quick", "pcs", std::nullopt).status, 200);
  EXPECT_EQ(svc->SubmitSpectrum(kRnaiQuery, "pcs", "rnai").status, 200);
}

TEST(SpectrumService, Health) {
  TempDir tmp;
  ServiceOptions o;
  o.cache_dir = tmp.path();
  auto ok = Body(MakeService(o)->HandleHealth());
  EXPECT_EQ(ok["status"], "ok");
  EXPECT_EQ(ok["cache"], "writable");
  EXPECT_EQ(ok["dialect"], "patentsview-legacy");
  EXPECT_EQ(ok["version"], PCS_VERSION);

  auto disabled = Body(MakeService({})->HandleHealth());
  EXPECT_EQ(disabled["status"], "ok");
  EXPECT_EQ(disabled["cache"], "disabled");

  auto const ro = testing::ReadOnlyDir(tmp);
  if (ro.empty()) GTEST_SKIP() << "no unwritable directory available";
  o.cache_dir = ro;
  auto degraded = Body(MakeService(o)->HandleHealth());
  EXPECT_EQ(degraded["status"], "degraded");
  EXPECT_EQ(degraded["cache"], "read-only");
}

TEST(ServiceConfig, Environment) {
  ServiceConfig c;
  std::map<std::string, std::string> env = {
      {"PCS_PORT", "9090"}, {"PCS_BIND", "0.0.0.0"}, {"PCS_ASYNC_THRESHOLD_MS", "250"}};
  auto lookup = [&](char const* n) -> std::optional<std::string> {
    auto it = env.find(n);
    if (it == env.end()) return std::nullopt;
    return it->second;
  };
  ApplyServiceEnvironment(c, lookup);
  EXPECT_EQ(c.port, 9090);
  EXPECT_EQ(c.bind_address, "0.0.0.0");
  EXPECT_EQ(c.async_threshold, 250ms);
  env["PCS_PORT"] = "http";
  EXPECT_THROW(ApplyServiceEnvironment(c, lookup), Error);
}

class LiveServer : public ::testing::Test {
 protected:
  void Start(ServiceOptions o) {
    o.config.port = 0;
    o.config.cors_origin = "http://ui.test";
    server_ = std::make_unique<HttpServer>(MakeService(o));
    port_ = server_->Bind();
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_->ListenAfterBind(); });
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    // Wait for the accept loop.
    for (int i = 0; i < 100 && !client_->Get("/api/health"); ++i) {
      std::this_thread::sleep_for(10ms);
    }
  }
  void TearDown() override {
    if (server_) server_->Stop();
    if (thread_.joinable()) thread_.join();
  }

  std::unique_ptr<HttpServer> server_;
  std::thread thread_;
  std::unique_ptr<httplib::Client> client_;
  int port_ = 0;
};

TEST_F(LiveServer, SpectrumOverHttp) {
  Start({});
  auto res = client_->Get("/api/spectrum", httplib::Params{{"q", kRnaiQuery},
                                                           {"mode", "pcs"},
                                                           {"fixture", "rnai"}},
                          httplib::Headers{});
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->get_header_value("Content-Type"), "application/json; charset=utf-8");
  EXPECT_FALSE(res->get_header_value("X-Generated-At").empty());
  EXPECT_EQ(json::parse(res->body)["landmark"]["patent_id"], "6506559");

  auto bad = client_->Get("/api/spectrum?q=%2C%2C%2C&mode=pcs");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
  EXPECT_EQ(json::parse(bad->body)["error"], "EmptyQuery");
}

TEST_F(LiveServer, HealthAndUnknownRoute) {
  Start({});
  auto health = client_->Get("/api/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  EXPECT_EQ(json::parse(health->body)["status"], "ok");

  auto missing = client_->Get("/api/nothing-here");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  EXPECT_EQ(json::parse(missing->body)["error"], "NotFound");
}

TEST_F(LiveServer, CorsOnlyForConfiguredOrigin) {
  Start({});
  auto allowed = client_->Get("/api/health", httplib::Headers{{"Origin", "http://ui.test"}});
  ASSERT_TRUE(allowed);
  EXPECT_EQ(allowed->get_header_value("Access-Control-Allow-Origin"), "http://ui.test");
  auto other = client_->Get("/api/health", httplib::Headers{{"Origin", "http://evil.test"}});
  ASSERT_TRUE(other);
  EXPECT_FALSE(other->has_header("Access-Control-Allow-Origin"));
  auto preflight = client_->Options("/api/spectrum",
                                    httplib::Headers{{"Origin", "http://ui.test"}});
  ASSERT_TRUE(preflight);
  EXPECT_EQ(preflight->status, 204);
  EXPECT_EQ(preflight->get_header_value("Access-Control-Allow-Origin"), "http://ui.test");
}

TEST_F(LiveServer, ServesStaticBundle) {
  TempDir tmp;
  std::ofstream(tmp.path() / "index.html") << "<html>bundle</html>";
  std::ofstream(tmp.path() / "app.js") << "console.log(1);";
  ServiceOptions o;
  o.config.static_dir = tmp.path();
  Start(o);
  auto index = client_->Get("/");
  ASSERT_TRUE(index);
  EXPECT_EQ(index->status, 200);
  EXPECT_EQ(index->body, "<html>bundle</html>");
  auto js = client_->Get("/app.js");
  ASSERT_TRUE(js);
  EXPECT_EQ(js->body, "console.log(1);");
  EXPECT_EQ(client_->Get("/api/health")->status, 200);
}

TEST_F(LiveServer, PlaceholderWithoutBundle) {
  Start({});
  auto index = client_->Get("/");
  ASSERT_TRUE(index);
  EXPECT_EQ(index->status, 200);
  EXPECT_NE(index->body.find("/api/spectrum"), std::string::npos);
}

}  // namespace
}  // namespace pcs
