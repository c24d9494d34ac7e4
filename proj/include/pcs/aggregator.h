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

#ifndef PCS_AGGREGATOR_H_
#define PCS_AGGREGATOR_H_

#include <cstdint>
#include <map>
#include <vector>

#include "pcs/patent.h"

namespace pcs {

/// All citation pairs pointing at patents granted in one year.
///
/// Invariants: c_total == sum(counts), top_count == max(counts) and top_id is
/// the smallest id attaining it, c_total >= top_count >= 1.
struct YearBin {
  int year = 0;
  std::int64_t c_total = 0;
  std::map<PatentId, std::int64_t> counts;
  PatentId top_id;
  std::int64_t top_count = 0;

  friend bool operator==(YearBin const&, YearBin const&) = default;
};

/// Builds a bin from per-patent counts and derives c_total and the top
/// patent. Zero counts are discarded. Throws Error(kInvalidArgument) if no
/// positive count remains or a count is negative.
YearBin MakeYearBin(int year, std::map<PatentId, std::int64_t> counts);

struct CorpusStats {
  std::int64_t citing_count = 0;
  /// Distinct cited ids across the corpus, dated or not.
  std::int64_t unique_cited_count = 0;
  std::int64_t dropped_unknown_year = 0;
  std::int64_t citation_pairs = 0;

  friend bool operator==(CorpusStats const&, CorpusStats const&) = default;
};

struct Aggregation {
  std::vector<YearBin> bins;  // ascending by year, one per cited year
  CorpusStats stats;
};

/// Bins every (citing, cited) pair by the cited patent's grant year. A pair
/// counts once; references with unknown year are tallied in
/// stats.dropped_unknown_year. Throws Error(kEmptyCorpus) if no pair has a
/// known year.
Aggregation Aggregate(FetchResult const& fetch);

}  // namespace pcs

#endif  // PCS_AGGREGATOR_H_
