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

#ifndef PCS_CLIENT_CONFIG_H_
#define PCS_CLIENT_CONFIG_H_

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>

namespace pcs {

/// Wire shape of a patent search API: where to send requests, how to encode
/// the text filter and pagination, and which response keys carry the data.
/// The built-in "patentsview-legacy" dialect mirrors the original PatentsView
/// `patents/query` endpoint; other dialects come from the config file.
struct ApiDialect {
  std::string name = "patentsview-legacy";
  std::string base_url = "https://api.patentsview.org";
  std::string path = "/patents/query";
  std::string method = "GET";  // GET: params in the URL. POST: JSON body.
  std::string api_key_header;  // empty: no key sent

  std::string query_param = "q";
  std::string fields_param = "f";
  std::string options_param = "o";
  std::string page_key = "page";
  std::string per_page_key = "per_page";
  int max_page_size = 1000;

  std::string or_operator = "_or";
  std::string keyword_operator = "_text_any";
  std::string phrase_operator = "_text_phrase";
  std::string title_field = "patent_title";
  std::string abstract_field = "patent_abstract";

  std::string patent_number_field = "patent_number";
  std::string patent_date_field = "patent_date";
  std::string cited_list_field = "cited_patents";
  std::string cited_number_field = "cited_patent_number";
  std::string cited_date_field = "cited_patent_date";

  std::string results_key = "patents";
  std::string total_key = "total_patent_count";
};

ApiDialect LegacyPatentsViewDialect();

struct ClientConfig {
  std::string dialect = "patentsview-legacy";
  std::optional<std::string> base_url;  // overrides the dialect's base_url
  int page_size = 1000;
  int page_cap = 100;   // most pages a single query may need
  int max_retries = 3;  // retries after the first attempt
  std::chrono::milliseconds backoff_base{500};
  std::chrono::milliseconds inter_page_delay{200};
  std::chrono::seconds timeout{60};
  std::filesystem::path cache_dir = ".pcs-cache";
  bool use_cache = true;
  std::string api_key;
  std::map<std::string, ApiDialect> dialects;  // from the config file
};

/// Reads a JSON config file on top of `base`. Recognized keys: dialect,
/// base_url, page_size, page_cap, max_retries, backoff_ms,
/// inter_page_delay_ms, timeout_s, cache_dir, use_cache, api_key and a
/// "dialects" object whose members override fields of the legacy dialect.
/// Throws Error(kInvalidArgument) on unreadable or malformed files.
ClientConfig LoadClientConfig(std::filesystem::path const& path,
                              ClientConfig base = {});

using EnvLookup = std::function<std::optional<std::string>(char const*)>;

/// Applies PCS_DIALECT, PCS_BASE_URL, PCS_PAGE_SIZE, PCS_PAGE_CAP,
/// PCS_RETRIES, PCS_PAGE_DELAY_MS, PCS_CACHE_DIR, PCS_NO_CACHE and
/// PCS_API_KEY. `env` defaults to the process environment.
void ApplyEnvironment(ClientConfig& config, EnvLookup const& env = {});

/// The dialect named by config.dialect with config.base_url applied. Throws
/// Error(kInvalidArgument) for an unknown name.
ApiDialect ResolveDialect(ClientConfig const& config);

}  // namespace pcs

#endif  // PCS_CLIENT_CONFIG_H_
