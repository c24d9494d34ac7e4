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

#include <cstdlib>

#include "httplib.h"
#include "json.hpp"
#include "pcs/error.h"

namespace pcs {
namespace {

using json = nlohmann::json;

constexpr char kJsonType[] = "application/json; charset=utf-8";
constexpr std::size_t kMaxRetainedJobs = 256;

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyQuery:
    case ErrorCode::kUnterminatedPhrase:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kFixtureQueryMismatch:
      return 400;
    case ErrorCode::kUnknownFixture:
      return 404;
    case ErrorCode::kNoPositivePeak:
    case ErrorCode::kEmptyCorpus:
    case ErrorCode::kPageCapExceeded:
      return 422;
    case ErrorCode::kApiUnreachable:
    case ErrorCode::kApiRejected:
    case ErrorCode::kApiSchemaMismatch:
      return 502;
    default:
      return 500;
  }
}

ServiceResponse ErrorResponse(int status, std::string_view name,
                              std::string const& message) {
  return {status, json{{"error", name}, {"message", message}}.dump()};
}

ServiceResponse ErrorResponse(Error const& e) {
  return ErrorResponse(HttpStatusFor(e.code()), e.name(), e.what());
}

json SpectrumJson(RunReport const& report, std::string const& url_template) {
  auto const& s = report.spectrum;
  json years = json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto const year = s.YearAt(i);
    auto const* bin = s.BinFor(year);
    years.push_back(
        {{"year", year},
         {"c_total", s.c()[i]},
         {"pcs_value", s.pcs()[i].ToDouble()},
         {"f_value", s.f()[i].ToDouble()},
         {"top_patent_id", bin ? json(bin->top_id.str()) : json()},
         {"top_patent_count", bin ? bin->top_count : 0},
         {"document_url",
          bin ? json(DocumentUrl(url_template, bin->top_id)) : json()}});
  }
  json landmark;
  if (report.landmark) {
    auto const& l = *report.landmark;
    json runner_ups = json::array();
    for (auto const& p : l.runner_ups) {
      runner_ups.push_back({{"year", p.year},
                            {"patent_id", p.patent.str()},
                            {"score", p.score.ToDouble()},
                            {"document_url", DocumentUrl(url_template, p.patent)}});
    }
    landmark = {{"patent_id", l.patent.str()},
                {"year", l.year},
                {"score", l.score.ToDouble()},
                {"odds", l.odds},
                {"document_url", DocumentUrl(url_template, l.patent)},
                {"runner_ups", std::move(runner_ups)}};
  }
  return {{"query", report.query},
          {"citing_count", report.stats.citing_count},
          {"unique_cited_count", report.stats.unique_cited_count},
          {"mode", ModeName(s.mode())},
          {"source", DataSourceName(report.source)},
          {"api_snapshot_date", report.api_snapshot_date},
          {"years", std::move(years)},
          {"landmark", std::move(landmark)}};
}

std::optional<std::string> Env(EnvLookup const& env, char const* name) {
  if (env) return env(name);
  if (char const* v = std::getenv(name)) return std::string(v);
  return std::nullopt;
}

}  // namespace

void ApplyServiceEnvironment(ServiceConfig& config, EnvLookup const& env) {
  if (auto v = Env(env, "PCS_BIND")) config.bind_address = *v;
  try {
    if (auto v = Env(env, "PCS_PORT")) config.port = std::stoi(*v);
    if (auto v = Env(env, "PCS_ASYNC_THRESHOLD_MS")) {
      config.async_threshold = std::chrono::milliseconds(std::stoi(*v));
    }
  } catch (std::exception const&) {
    throw Error(ErrorCode::kInvalidArgument,
                "PCS_PORT and PCS_ASYNC_THRESHOLD_MS must be integers");
  }
  if (auto v = Env(env, "PCS_STATIC_DIR")) config.static_dir = *v;
  if (auto v = Env(env, "PCS_DOCUMENT_URL")) config.document_url_template = *v;
  if (auto v = Env(env, "PCS_CORS_ORIGIN")) config.cors_origin = *v;
}

SpectrumService::SpectrumService(ServiceConfig config,
                                 std::shared_ptr<Pipeline const> pipeline)
    : config_(std::move(config)), pipeline_(std::move(pipeline)) {}

SpectrumService::~SpectrumService() {
  std::lock_guard lock(jobs_mu_);
  for (auto& [id, job] : jobs_) job.wait();
}

std::string SpectrumService::AllowedOrigin() const {
  if (!config_.cors_origin.empty()) return config_.cors_origin;
  return "http://" + config_.bind_address + ":" + std::to_string(config_.port);
}

ServiceResponse SpectrumService::HandleSpectrum(
    std::string const& q, std::string const& mode_name,
    std::optional<std::string> const& fixture) const {
  auto mode = ParseMode(mode_name.empty() ? "pcs" : mode_name);
  if (!mode) {
    return ErrorResponse(400, "InvalidArgument",
                         "mode must be pcs or rpys, got '" + mode_name + "'");
  }
  RunRequest request;
  request.raw_query = q;
  request.fixture = fixture;
  request.mode = *mode;
  request.top_k = config_.top_k;
  try {
    auto const report = pipeline_->Run(request);
    auto body = SpectrumJson(report, config_.document_url_template);
    if (!report.landmark) {
      body["error"] = ErrorName(ErrorCode::kNoPositivePeak);
      return {422, body.dump()};
    }
    return {200, body.dump()};
  } catch (Error const& e) {
    return ErrorResponse(e);
  } catch (std::exception const& e) {
    return ErrorResponse(500, "Internal", e.what());
  }
}

ServiceResponse SpectrumService::SubmitSpectrum(
    std::string const& q, std::string const& mode,
    std::optional<std::string> const& fixture) {
  // Fixtures, cache hits and malformed queries never need the async path.
  bool needs_live = false;
  if (!fixture) {
    try {
      needs_live = !pipeline_->IsCached(ParseQuery(q));
    } catch (Error const&) {
      needs_live = false;
    }
  }
  if (!needs_live) return HandleSpectrum(q, mode, fixture);

  auto job = std::async(std::launch::async, [this, q, mode, fixture] {
               return HandleSpectrum(q, mode, fixture);
             }).share();
  if (job.wait_for(config_.async_threshold) == std::future_status::ready) {
    return job.get();
  }
  std::string id;
  {
    std::lock_guard lock(jobs_mu_);
    id = "job-" + std::to_string(next_job_++);
    // Drop the oldest finished jobs once the table is full.
    for (auto it = jobs_.begin(); jobs_.size() >= kMaxRetainedJobs && it != jobs_.end();) {
      if (it->second.wait_for(std::chrono::seconds(0)) ==
          std::future_status::ready) {
        it = jobs_.erase(it);
      } else {
        ++it;
      }
    }
    jobs_.emplace(id, job);
  }
  return {202, json{{"job_id", id},
                    {"status", "running"},
                    {"poll_url", "/api/jobs/" + id}}
                   .dump()};
}

ServiceResponse SpectrumService::HandleJob(std::string const& id) {
  std::shared_future<ServiceResponse> job;
  {
    std::lock_guard lock(jobs_mu_);
    auto it = jobs_.find(id);
    if (it == jobs_.end()) {
      return ErrorResponse(404, "NotFound", "unknown job '" + id + "'");
    }
    job = it->second;
  }
  if (job.wait_for(std::chrono::seconds(0)) != std::future_status::ready) {
    return {202, json{{"job_id", id},
                      {"status", "running"},
                      {"poll_url", "/api/jobs/" + id}}
                     .dump()};
  }
  return job.get();
}

ServiceResponse SpectrumService::HandleHealth() const {
  auto const& client = pipeline_->client()->config();
  std::string cache = "disabled";
  bool healthy = true;
  if (client.use_cache) {
    auto const access = CacheStore(client.cache_dir).Probe();
    cache = std::string(CacheAccessName(access));
    healthy = access == CacheAccess::kWritable;
  }
  return {200, json{{"status", healthy ? "ok" : "degraded"},
                    {"version", PCS_VERSION},
                    {"dialect", pipeline_->client()->dialect().name},
                    {"cache", cache}}
                   .dump()};
}

struct HttpServer::Impl {
  std::shared_ptr<SpectrumService> service;
  httplib::Server server;
};

HttpServer::HttpServer(std::shared_ptr<SpectrumService> service)
    : impl_(std::make_unique<Impl>()) {
  impl_->service = std::move(service);
  auto& server = impl_->server;
  auto* svc = impl_->service.get();

  auto send = [](httplib::Response& res, ServiceResponse const& r) {
    res.status = r.status;
    res.set_content(r.body, kJsonType);
    res.set_header("X-Generated-At", UtcTimestamp());
  };

  server.Get("/api/spectrum", [svc, send](httplib::Request const& req,
                                          httplib::Response& res) {
    std::optional<std::string> fixture;
    if (req.has_param("fixture")) fixture = req.get_param_value("fixture");
    send(res, svc->SubmitSpectrum(req.get_param_value("q"),
                                  req.get_param_value("mode"), fixture));
  });
  server.Get(R"(/api/jobs/([A-Za-z0-9\-]+))",
             [svc, send](httplib::Request const& req, httplib::Response& res) {
               send(res, svc->HandleJob(req.matches[1]));
             });
  server.Get("/api/health",
             [svc, send](httplib::Request const&, httplib::Response& res) {
               send(res, svc->HandleHealth());
             });
  server.Options(R"(/api/.*)",
                 [](httplib::Request const&, httplib::Response& res) {
                   res.status = 204;
                   res.set_header("Access-Control-Allow-Methods", "GET, OPTIONS");
                 });

  auto const& static_dir = svc->config().static_dir;
  std::error_code ec;
  if (static_dir.empty() || !std::filesystem::is_directory(static_dir, ec) ||
      !server.set_mount_point("/", static_dir.string())) {
    server.Get("/", [](httplib::Request const&, httplib::Response& res) {
      res.set_content(
          "<!doctype html><title>PCS</title><p>The web UI bundle is not "
          "installed. API: <code>/api/spectrum?q=...&amp;mode=pcs</code>, "
          "<code>/api/health</code>.</p>",
          "text/html; charset=utf-8");
    });
  }

  auto const origin = svc->AllowedOrigin();
  server.set_post_routing_handler(
      [origin](httplib::Request const& req, httplib::Response& res) {
        if (!origin.empty() && req.get_header_value("Origin") == origin) {
          res.set_header("Access-Control-Allow-Origin", origin);
          res.set_header("Vary", "Origin");
        }
      });
  server.set_error_handler(
      [](httplib::Request const& req, httplib::Response& res) {
        if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
        res.set_content(json{{"error", "NotFound"},
                             {"message", "no route for " + req.path}}
                            .dump(),
                        kJsonType);
        return httplib::Server::HandlerResponse::Handled;
      });
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Bind() {
  auto const& cfg = impl_->service->config();
  if (cfg.port == 0) return impl_->server.bind_to_any_port(cfg.bind_address);
  return impl_->server.bind_to_port(cfg.bind_address, cfg.port) ? cfg.port : -1;
}

bool HttpServer::ListenAfterBind() { return impl_->server.listen_after_bind(); }

void HttpServer::Stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace pcs
