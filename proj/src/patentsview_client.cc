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

#include "pcs/patentsview_client.h"

#include <cctype>
#include <thread>
#include <unordered_set>

#include "json.hpp"
#include "pcs/error.h"

namespace pcs {
namespace {

using json = nlohmann::json;

std::string PercentEncode(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 0xF];
    }
  }
  return out;
}

json TextFilter(Query const& query, ApiDialect const& d) {
  json branches = json::array();
  for (auto const& clause : query.clauses) {
    auto const& op = clause.kind == ClauseKind::kPhrase ? d.phrase_operator
                                                        : d.keyword_operator;
    for (auto const* field : {&d.title_field, &d.abstract_field}) {
      branches.push_back({{op, {{*field, clause.text}}}});
    }
  }
  return {{d.or_operator, std::move(branches)}};
}

[[noreturn]] void SchemaMismatch(std::string const& what) {
  throw Error(ErrorCode::kApiSchemaMismatch, "API response " + what);
}

json const& Require(json const& obj, std::string const& key,
                    std::string const& where) {
  auto it = obj.find(key);
  if (it == obj.end()) SchemaMismatch(where + " lacks '" + key + "'");
  return *it;
}

std::optional<int> YearFromDate(json const& value) {
  if (!value.is_string()) return std::nullopt;
  auto date = Date::Parse(value.get<std::string>());
  if (!date || !IsPlausibleGrantYear(date->year)) return std::nullopt;
  return date->year;
}

CitingPatent ParsePatent(json const& j, ApiDialect const& d,
                         std::int64_t& skipped) {
  if (!j.is_object()) SchemaMismatch("patent record is not an object");
  auto const& number = Require(j, d.patent_number_field, "patent record");
  if (!number.is_string()) SchemaMismatch("patent number is not a string");
  auto id = PatentId::TryParse(number.get<std::string>());
  if (!id) SchemaMismatch("has unusable patent number " + number.dump());

  CitingPatent p;
  p.id = *std::move(id);
  auto const& date = Require(j, d.patent_date_field, "patent " + p.id.str());
  auto parsed = date.is_string() ? Date::Parse(date.get<std::string>())
                                 : std::nullopt;
  if (!parsed) SchemaMismatch("patent " + p.id.str() + " has no grant date");
  p.grant_date = *parsed;
  if (auto it = j.find(d.title_field); it != j.end() && it->is_string()) {
    p.title = it->get<std::string>();
  }

  auto const& cited = Require(j, d.cited_list_field, "patent " + p.id.str());
  if (cited.is_null()) return p;
  if (!cited.is_array()) SchemaMismatch("cited list is not an array");
  for (auto const& c : cited) {
    if (!c.is_object()) SchemaMismatch("cited entry is not an object");
    auto const& cn = Require(c, d.cited_number_field, "cited entry");
    // The legacy API pads citation-less patents with one all-null entry.
    if (cn.is_null()) continue;
    if (!cn.is_string()) SchemaMismatch("cited number is not a string");
    auto cited_id = PatentId::TryParse(cn.get<std::string>());
    if (!cited_id) {
      ++skipped;
      continue;
    }
    auto it = c.find(d.cited_date_field);
    p.cited.push_back(CitedReference{
        *std::move(cited_id),
        it == c.end() ? std::nullopt : YearFromDate(*it)});
  }
  CollapseDuplicateCitations(p.cited);
  return p;
}

void DefaultSleep(std::chrono::milliseconds d) {
  if (d.count() > 0) std::this_thread::sleep_for(d);
}

}  // namespace

std::string ApiRequest::Url() const {
  std::string url = base_url + path;
  char sep = url.find('?') == std::string::npos ? '?' : '&';
  for (auto const& [k, v] : params) {
    url += sep;
    url += PercentEncode(k);
    url += '=';
    url += PercentEncode(v);
    sep = '&';
  }
  return url;
}

ApiRequest BuildApiRequest(Query const& query, int page, int page_size,
                           ApiDialect const& d, std::string_view api_key) {
  if (page < 1) {
    throw Error(ErrorCode::kInvalidArgument, "page must be >= 1");
  }
  if (page_size < 1 || page_size > d.max_page_size) {
    throw Error(ErrorCode::kInvalidArgument,
                "page size " + std::to_string(page_size) + " outside [1, " +
                    std::to_string(d.max_page_size) + "]");
  }
  ApiRequest req;
  req.method = d.method;
  req.base_url = d.base_url;
  req.path = d.path;
  req.page = page;
  req.page_size = page_size;
  req.first_record = static_cast<std::int64_t>(page - 1) * page_size + 1;
  req.last_record = static_cast<std::int64_t>(page) * page_size;

  auto const filter = TextFilter(query, d);
  json const fields = {d.patent_number_field, d.patent_date_field,
                       d.title_field, d.cited_number_field,
                       d.cited_date_field};
  json const options = {{d.page_key, page}, {d.per_page_key, page_size}};
  if (d.method == "POST") {
    req.body = json{{d.query_param, filter},
                    {d.fields_param, fields},
                    {d.options_param, options}}
                   .dump();
    req.headers.emplace_back("Content-Type", "application/json");
  } else {
    req.params = {{d.query_param, filter.dump()},
                  {d.fields_param, fields.dump()},
                  {d.options_param, options.dump()}};
  }
  if (!d.api_key_header.empty() && !api_key.empty()) {
    req.headers.emplace_back(d.api_key_header, std::string(api_key));
  }
  req.headers.emplace_back("Accept", "application/json");
  return req;
}

ApiPage ParseApiPage(std::string_view body, ApiDialect const& d) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (json::exception const& e) {
    SchemaMismatch(std::string("is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) SchemaMismatch("is not a JSON object");

  ApiPage page;
  auto const& total = Require(doc, d.total_key, "body");
  if (!total.is_number_integer() || total.get<std::int64_t>() < 0) {
    SchemaMismatch("total is not a non-negative integer");
  }
  page.total = total.get<std::int64_t>();
  auto const& results = Require(doc, d.results_key, "body");
  if (results.is_null()) return page;  // the legacy API's empty result
  if (!results.is_array()) SchemaMismatch("results are not an array");
  for (auto const& p : results) {
    page.patents.push_back(ParsePatent(p, d, page.skipped_invalid_citations));
  }
  return page;
}

PatentsViewClient::PatentsViewClient(ClientConfig config,
                                     std::shared_ptr<HttpTransport> transport,
                                     Sleeper sleeper)
    : config_(std::move(config)),
      dialect_(ResolveDialect(config_)),
      transport_(std::move(transport)),
      sleep_(sleeper ? std::move(sleeper) : Sleeper(DefaultSleep)) {
  if (config_.page_size < 1 || config_.page_size > dialect_.max_page_size) {
    throw Error(ErrorCode::kInvalidArgument,
                "page_size must be in [1, " +
                    std::to_string(dialect_.max_page_size) + "]");
  }
  if (config_.page_cap < 1 || config_.max_retries < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "page_cap must be >= 1 and max_retries >= 0");
  }
}

std::string PatentsViewClient::KeyFor(Query const& query) const {
  return CacheKey(query, dialect_.name, config_.page_size);
}

std::string PatentsViewClient::SendWithRetry(ApiRequest const& request) const {
  std::string last_problem;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt != 0) sleep_(config_.backoff_base * (1 << (attempt - 1)));
    auto const result = transport_->Send(request);
    if (!result.transport_ok) {
      last_problem = "transport error: " + result.error;
      continue;
    }
    if (result.status == 429 || result.status >= 500) {
      last_problem = "HTTP " + std::to_string(result.status);
      continue;
    }
    if (result.status < 200 || result.status >= 300) {
      throw Error(ErrorCode::kApiRejected,
                  "API rejected page " + std::to_string(request.page) +
                      " with HTTP " + std::to_string(result.status));
    }
    return result.body;
  }
  throw Error(ErrorCode::kApiUnreachable,
              request.base_url + request.path + " unreachable after " +
                  std::to_string(config_.max_retries + 1) +
                  " attempts (" + last_problem + ")");
}

FetchResult PatentsViewClient::FetchLive(Query const& query) const {
  FetchResult result;
  result.source = DataSource::kLive;
  std::unordered_set<PatentId> seen;
  std::int64_t pages_needed = 1;
  for (int page = 1; page <= pages_needed; ++page) {
    if (page > 1) sleep_(config_.inter_page_delay);
    auto const request = BuildApiRequest(query, page, config_.page_size,
                                         dialect_, config_.api_key);
    auto parsed = ParseApiPage(SendWithRetry(request), dialect_);
    ++result.pages_fetched;
    if (page == 1) {
      result.total_reported = parsed.total;
      pages_needed = (parsed.total + config_.page_size - 1) / config_.page_size;
      if (pages_needed > config_.page_cap) {
        throw Error(ErrorCode::kPageCapExceeded,
                    std::to_string(parsed.total) + " matching patents need " +
                        std::to_string(pages_needed) + " pages; cap is " +
                        std::to_string(config_.page_cap));
      }
    }
    result.skipped_invalid_citations += parsed.skipped_invalid_citations;
    for (auto& p : parsed.patents) {
      // Pages can overlap when the index shifts between requests.
      if (seen.insert(p.id).second) result.patents.push_back(std::move(p));
    }
    if (parsed.patents.empty()) break;
  }
  return result;
}

CacheEntry PatentsViewClient::FetchEntry(Query const& query) const {
  auto const key = KeyFor(query);
  std::optional<CacheStore> cache;
  if (config_.use_cache) cache.emplace(config_.cache_dir);
  if (cache) {
    auto lookup = cache->Get(key);
    if (lookup.status == CacheStatus::kHit) {
      lookup.entry->payload.source = DataSource::kCache;
      return *std::move(lookup.entry);
    }
    if (lookup.status == CacheStatus::kCorrupt && warn_) {
      warn_("ignoring corrupt cache entry: " + lookup.diagnostic);
    }
  }

  CacheEntry entry;
  entry.key = key;
  entry.query = RenderQuery(query);
  entry.dialect = dialect_.name;
  entry.created_at = UtcTimestamp();
  entry.api_snapshot_date = UtcDate();
  entry.payload = FetchLive(query);
  if (cache) {
    try {
      cache->Put(entry);
    } catch (Error const& e) {
      if (warn_) warn_(std::string("cache write failed: ") + e.what());
    }
  }
  return entry;
}

FetchResult PatentsViewClient::FetchAll(Query const& query) const {
  return FetchEntry(query).payload;
}

}  // namespace pcs
