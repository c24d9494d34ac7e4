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

#ifndef PCS_PATENTSVIEW_CLIENT_H_
#define PCS_PATENTSVIEW_CLIENT_H_

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcs/cache_store.h"
#include "pcs/client_config.h"
#include "pcs/patent.h"
#include "pcs/query.h"

namespace pcs {

/// A fully described API call. For GET the parameters go in the URL query
/// string; for POST they are folded into `body` as one JSON object.
struct ApiRequest {
  std::string method;
  std::string base_url;
  std::string path;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::pair<std::string, std::string>> headers;
  std::string body;
  int page = 1;
  int page_size = 0;
  /// 1-based record range this page covers.
  std::int64_t first_record = 0;
  std::int64_t last_record = 0;

  /// base_url + path + percent-encoded query string.
  std::string Url() const;
};

/// Builds the request for one page: an OR over every clause, each matched
/// against both title and abstract, asking for the patent number, grant
/// date, title, and the cited patent numbers and dates. Throws
/// Error(kInvalidArgument) for a page < 1 or a page size outside
/// [1, dialect.max_page_size].
ApiRequest BuildApiRequest(Query const& query, int page, int page_size,
                           ApiDialect const& dialect,
                           std::string_view api_key = {});

struct ApiPage {
  std::vector<CitingPatent> patents;
  std::int64_t total = 0;
  std::int64_t skipped_invalid_citations = 0;
};

/// Decodes one response body. Cited dates that are missing or unparseable
/// give an unknown grant year; cited numbers that do not normalize are
/// skipped and counted. Throws Error(kApiSchemaMismatch) when required keys
/// are missing or have the wrong type.
ApiPage ParseApiPage(std::string_view body, ApiDialect const& dialect);

struct HttpResult {
  bool transport_ok = false;
  int status = 0;
  std::string body;
  std::string error;  // transport failure description
};

class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResult Send(ApiRequest const& request) = 0;
};

/// cpp-httplib backed transport. Safe to share: each Send opens its own
/// connection.
class HttplibTransport : public HttpTransport {
 public:
  explicit HttplibTransport(std::chrono::seconds timeout) : timeout_(timeout) {}
  HttpResult Send(ApiRequest const& request) override;

 private:
  std::chrono::seconds timeout_;
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;

/// Pages through the search API for a query, optionally backed by a cache.
///
/// Each FetchAll call runs its pages strictly one after another with the
/// configured delay in between, retrying transport failures, 429 and 5xx
/// responses with exponential backoff. The client holds no per-call state,
/// so one instance may serve concurrent jobs.
class PatentsViewClient {
 public:
  PatentsViewClient(ClientConfig config, std::shared_ptr<HttpTransport> transport,
                    Sleeper sleeper = {});

  ClientConfig const& config() const { return config_; }
  ApiDialect const& dialect() const { return dialect_; }
  std::string KeyFor(Query const& query) const;

  /// Cache first (when enabled), then the live API; live results are
  /// written back to the cache. Throws Error with kApiUnreachable,
  /// kApiRejected, kApiSchemaMismatch or kPageCapExceeded.
  FetchResult FetchAll(Query const& query) const;

  /// Like FetchAll but also returns the entry that was read or written.
  CacheEntry FetchEntry(Query const& query) const;

  /// Always hits the API, never the cache.
  FetchResult FetchLive(Query const& query) const;

  /// Called with a one-line note when a corrupt cache entry is skipped or a
  /// cache write fails.
  void set_warning_sink(std::function<void(std::string const&)> sink) {
    warn_ = std::move(sink);
  }

 private:
  std::string SendWithRetry(ApiRequest const& request) const;

  ClientConfig config_;
  ApiDialect dialect_;
  std::shared_ptr<HttpTransport> transport_;
  Sleeper sleep_;
  std::function<void(std::string const&)> warn_;
};

}  // namespace pcs

#endif  // PCS_PATENTSVIEW_CLIENT_H_
