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

#include "pcs/client_config.h"

#include <cstdlib>
#include <fstream>

#include "json.hpp"
#include "pcs/error.h"

namespace pcs {
namespace {

using json = nlohmann::json;

template <typename T>
void Overlay(json const& j, char const* key, T& field) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) {
    field = it->get<T>();
  }
}

ApiDialect DialectFromJson(std::string const& name, json const& j) {
  ApiDialect d = LegacyPatentsViewDialect();
  d.name = name;
  Overlay(j, "base_url", d.base_url);
  Overlay(j, "path", d.path);
  Overlay(j, "method", d.method);
  Overlay(j, "api_key_header", d.api_key_header);
  Overlay(j, "query_param", d.query_param);
  Overlay(j, "fields_param", d.fields_param);
  Overlay(j, "options_param", d.options_param);
  Overlay(j, "page_key", d.page_key);
  Overlay(j, "per_page_key", d.per_page_key);
  Overlay(j, "max_page_size", d.max_page_size);
  Overlay(j, "or_operator", d.or_operator);
  Overlay(j, "keyword_operator", d.keyword_operator);
  Overlay(j, "phrase_operator", d.phrase_operator);
  Overlay(j, "title_field", d.title_field);
  Overlay(j, "abstract_field", d.abstract_field);
  Overlay(j, "patent_number_field", d.patent_number_field);
  Overlay(j, "patent_date_field", d.patent_date_field);
  Overlay(j, "cited_list_field", d.cited_list_field);
  Overlay(j, "cited_number_field", d.cited_number_field);
  Overlay(j, "cited_date_field", d.cited_date_field);
  Overlay(j, "results_key", d.results_key);
  Overlay(j, "total_key", d.total_key);
  if (d.method != "GET" && d.method != "POST") {
    throw Error(ErrorCode::kInvalidArgument,
                "dialect " + name + ": method must be GET or POST");
  }
  return d;
}

int ParseInt(std::string const& what, std::string const& text) {
  try {
    std::size_t used = 0;
    int v = std::stoi(text, &used);
    if (used == text.size()) return v;
  } catch (std::exception const&) {
  }
  throw Error(ErrorCode::kInvalidArgument,
              what + ": expected an integer, got '" + text + "'");
}

bool ParseBool(std::string const& text) {
  return text == "1" || text == "true" || text == "yes" || text == "on";
}

}  // namespace

ApiDialect LegacyPatentsViewDialect() { return ApiDialect{}; }

ClientConfig LoadClientConfig(std::filesystem::path const& path,
                              ClientConfig base) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot read config file " + path.string());
  }
  json j;
  try {
    j = json::parse(in);
    if (!j.is_object()) throw Error(ErrorCode::kInvalidArgument, "not an object");
    Overlay(j, "dialect", base.dialect);
    if (auto it = j.find("base_url"); it != j.end() && !it->is_null()) {
      base.base_url = it->get<std::string>();
    }
    Overlay(j, "page_size", base.page_size);
    Overlay(j, "page_cap", base.page_cap);
    Overlay(j, "max_retries", base.max_retries);
    if (auto it = j.find("backoff_ms"); it != j.end()) {
      base.backoff_base = std::chrono::milliseconds(it->get<int>());
    }
    if (auto it = j.find("inter_page_delay_ms"); it != j.end()) {
      base.inter_page_delay = std::chrono::milliseconds(it->get<int>());
    }
    if (auto it = j.find("timeout_s"); it != j.end()) {
      base.timeout = std::chrono::seconds(it->get<int>());
    }
    if (auto it = j.find("cache_dir"); it != j.end()) {
      base.cache_dir = it->get<std::string>();
    }
    Overlay(j, "use_cache", base.use_cache);
    Overlay(j, "api_key", base.api_key);
    if (auto it = j.find("dialects"); it != j.end()) {
      for (auto const& [name, body] : it->items()) {
        base.dialects[name] = DialectFromJson(name, body);
      }
    }
  } catch (json::exception const& e) {
    throw Error(ErrorCode::kInvalidArgument,
                "malformed config file " + path.string() + ": " + e.what());
  } catch (Error const& e) {
    throw Error(ErrorCode::kInvalidArgument,
                "malformed config file " + path.string() + ": " + e.what());
  }
  return base;
}

void ApplyEnvironment(ClientConfig& config, EnvLookup const& env) {
  EnvLookup lookup = env;
  if (!lookup) {
    lookup = [](char const* name) -> std::optional<std::string> {
      if (char const* v = std::getenv(name)) return std::string(v);
      return std::nullopt;
    };
  }
  if (auto v = lookup("PCS_DIALECT")) config.dialect = *v;
  if (auto v = lookup("PCS_BASE_URL")) config.base_url = *v;
  if (auto v = lookup("PCS_PAGE_SIZE")) {
    config.page_size = ParseInt("PCS_PAGE_SIZE", *v);
  }
  if (auto v = lookup("PCS_PAGE_CAP")) {
    config.page_cap = ParseInt("PCS_PAGE_CAP", *v);
  }
  if (auto v = lookup("PCS_RETRIES")) {
    config.max_retries = ParseInt("PCS_RETRIES", *v);
  }
  if (auto v = lookup("PCS_PAGE_DELAY_MS")) {
    config.inter_page_delay =
        std::chrono::milliseconds(ParseInt("PCS_PAGE_DELAY_MS", *v));
  }
  if (auto v = lookup("PCS_CACHE_DIR")) config.cache_dir = *v;
  if (auto v = lookup("PCS_NO_CACHE")) config.use_cache = !ParseBool(*v);
  if (auto v = lookup("PCS_API_KEY")) config.api_key = *v;
}

ApiDialect ResolveDialect(ClientConfig const& config) {
  ApiDialect d;
  if (auto it = config.dialects.find(config.dialect);
      it != config.dialects.end()) {
    d = it->second;
  } else if (config.dialect == LegacyPatentsViewDialect().name) {
    d = LegacyPatentsViewDialect();
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown API dialect '" + config.dialect + "'");
  }
  if (config.base_url) d.base_url = *config.base_url;
  return d;
}

}  // namespace pcs
