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

#include "pcs/aggregator.h"

#include <string>
#include <unordered_set>

#include "pcs/error.h"

namespace pcs {

YearBin MakeYearBin(int year, std::map<PatentId, std::int64_t> counts) {
  YearBin bin;
  bin.year = year;
  for (auto it = counts.begin(); it != counts.end();) {
    if (it->second < 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "negative citation count for " + it->first.str());
    }
    if (it->second == 0) {
      it = counts.erase(it);
      continue;
    }
    bin.c_total += it->second;
    // Strictly greater: the map iterates in id order, so the first patent
    // reaching the maximum is the smallest id.
    if (it->second > bin.top_count) {
      bin.top_count = it->second;
      bin.top_id = it->first;
    }
    ++it;
  }
  if (bin.c_total == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "year " + std::to_string(year) + " has no citations");
  }
  bin.counts = std::move(counts);
  return bin;
}

Aggregation Aggregate(FetchResult const& fetch) {
  std::map<int, std::map<PatentId, std::int64_t>> by_year;
  std::unordered_set<PatentId> unique;
  Aggregation out;
  out.stats.citing_count = static_cast<std::int64_t>(fetch.patents.size());

  for (auto const& patent : fetch.patents) {
    for (auto const& ref : patent.cited) {
      unique.insert(ref.cited_id);
      ++out.stats.citation_pairs;
      if (!ref.grant_year) {
        ++out.stats.dropped_unknown_year;
        continue;
      }
      ++by_year[*ref.grant_year][ref.cited_id];
    }
  }
  out.stats.unique_cited_count = static_cast<std::int64_t>(unique.size());

  if (by_year.empty()) {
    throw Error(ErrorCode::kEmptyCorpus,
                "no citing patent has a reference with a known grant year");
  }
  out.bins.reserve(by_year.size());
  for (auto& [year, counts] : by_year) {
    out.bins.push_back(MakeYearBin(year, std::move(counts)));
  }
  return out;
}

}  // namespace pcs
