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

#include "httplib.h"
#include "pcs/patentsview_client.h"

namespace pcs {

HttpResult HttplibTransport::Send(ApiRequest const& request) {
  HttpResult out;
  httplib::Client client(request.base_url);
  if (!client.is_valid()) {
    out.error = "invalid base URL " + request.base_url;
    return out;
  }
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_follow_location(true);

  httplib::Headers headers;
  for (auto const& [k, v] : request.headers) headers.emplace(k, v);

  httplib::Result res;
  if (request.method == "POST") {
    res = client.Post(request.path, headers, request.body, "application/json");
  } else {
    httplib::Params params;
    for (auto const& [k, v] : request.params) params.emplace(k, v);
    res = client.Get(request.path, params, headers);
  }
  if (!res) {
    out.error = httplib::to_string(res.error());
    return out;
  }
  out.transport_ok = true;
  out.status = res->status;
  out.body = std::move(res->body);
  return out;
}

}  // namespace pcs
