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

#ifndef PCS_HTTP_SERVICE_H_
#define PCS_HTTP_SERVICE_H_

#include <chrono>
#include <filesystem>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "pcs/pipeline.h"

namespace pcs {

struct ServiceConfig {
  std::string bind_address = "127.0.0.1";
  int port = 8080;
  std::filesystem::path static_dir;  // built web UI bundle; may be empty
  std::string document_url_template = kDefaultDocumentUrlTemplate;
  /// Origin allowed by CORS. Empty: derived from bind_address and port.
  std::string cors_origin;
  /// Live fetches still running after this long become pollable jobs.
  std::chrono::milliseconds async_threshold{10000};
  std::size_t top_k = 5;
};

/// Applies PCS_BIND, PCS_PORT, PCS_STATIC_DIR, PCS_DOCUMENT_URL,
/// PCS_CORS_ORIGIN and PCS_ASYNC_THRESHOLD_MS.
void ApplyServiceEnvironment(ServiceConfig& config, EnvLookup const& env = {});

struct ServiceResponse {
  int status = 200;
  std::string body;  // JSON
};

/// Request handlers, independent of the socket layer.
class SpectrumService {
 public:
  SpectrumService(ServiceConfig config, std::shared_ptr<Pipeline const> pipeline);
  ~SpectrumService();

  ServiceConfig const& config() const { return config_; }
  std::string AllowedOrigin() const;

  /// Runs the pipeline synchronously. 200 with the spectrum; 400 for query
  /// problems or a bad mode; 404 for an unknown fixture; 422 when there is
  /// no positive peak (spectrum included, landmark null), the corpus is
  /// empty or the page cap is exceeded; 502 for upstream API failures.
  ServiceResponse HandleSpectrum(std::string const& q, std::string const& mode,
                                 std::optional<std::string> const& fixture) const;

  /// Like HandleSpectrum, but a live fetch that has not finished within the
  /// async threshold answers 202 with a job id to poll.
  ServiceResponse SubmitSpectrum(std::string const& q, std::string const& mode,
                                 std::optional<std::string> const& fixture);

  /// 202 while running, the finished response afterwards, 404 if unknown.
  ServiceResponse HandleJob(std::string const& id);

  /// Version, dialect and cache state. Never calls the upstream API.
  ServiceResponse HandleHealth() const;

 private:
  ServiceConfig config_;
  std::shared_ptr<Pipeline const> pipeline_;
  std::mutex jobs_mu_;
  std::map<std::string, std::shared_future<ServiceResponse>> jobs_;
  std::uint64_t next_job_ = 1;
};

/// Binds a SpectrumService to HTTP routes:
///   GET /api/spectrum?q=..&mode=pcs|rpys[&fixture=..]
///   GET /api/jobs/<id>
///   GET /api/health
///   GET / and static files from config.static_dir
class HttpServer {
 public:
  explicit HttpServer(std::shared_ptr<SpectrumService> service);
  ~HttpServer();
  HttpServer(HttpServer const&) = delete;
  HttpServer& operator=(HttpServer const&) = delete;

  /// Binds to the configured address and port (0: any free port) and
  /// returns the bound port, or -1.
  int Bind();
  /// Blocks serving requests until Stop().
  bool ListenAfterBind();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace pcs

#endif  // PCS_HTTP_SERVICE_H_
