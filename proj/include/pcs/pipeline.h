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

#ifndef PCS_PIPELINE_H_
#define PCS_PIPELINE_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcs/aggregator.h"
#include "pcs/patentsview_client.h"
#include "pcs/spectroscopy.h"

namespace pcs {

inline constexpr char kDefaultDocumentUrlTemplate[] =
    "https://patents.google.com/patent/US{id}";

/// Substitutes every "{id}" in `url_template` with the normalized number.
std::string DocumentUrl(std::string const& url_template, PatentId const& id);

struct RunRequest {
  std::optional<std::string> raw_query;  // required unless fixture is set
  std::optional<std::string> fixture;
  Mode mode = Mode::kPcs;
  std::size_t top_k = 5;
};

/// Highest-scoring year of each mode, for the RPYS-versus-PCS contrast.
struct ModeComparison {
  std::optional<Peak> pcs;
  std::optional<Peak> rpys;
  bool agree() const {
    return pcs && rpys && pcs->year == rpys->year && pcs->patent == rpys->patent;
  }
};

/// Everything a run produced. Rendering it needs no network access.
struct RunReport {
  std::string query;
  CorpusStats stats;
  Spectrum spectrum;
  std::optional<LandmarkResult> landmark;  // empty: no positive peak
  ModeComparison comparison;
  DataSource source = DataSource::kLive;
  std::string api_snapshot_date;
  std::vector<std::pair<std::string, double>> timings_ms;
};

/// Analysis half of the pipeline: aggregate, build the spectrum in the
/// requested mode, select the landmark and compare both modes. Throws
/// Error(kEmptyCorpus) when nothing can be binned; a missing positive peak
/// is recorded in the report rather than thrown.
RunReport Analyze(std::string canonical_query, CacheEntry const& data,
                  Mode mode, std::size_t top_k);

/// End-to-end runner shared by the CLI and the HTTP service.
class Pipeline {
 public:
  Pipeline(std::shared_ptr<PatentsViewClient const> client,
           std::filesystem::path fixture_dir)
      : client_(std::move(client)), fixture_dir_(std::move(fixture_dir)) {}

  /// Throws pcs::Error for every failure class. With a fixture and a query,
  /// the query must parse to the fixture's query (kFixtureQueryMismatch).
  RunReport Run(RunRequest const& request) const;

  /// True when the query can be answered without a live API call.
  bool IsCached(Query const& query) const;

  PatentsViewClient const* client() const { return client_.get(); }
  std::filesystem::path const& fixture_dir() const { return fixture_dir_; }

 private:
  std::shared_ptr<PatentsViewClient const> client_;
  std::filesystem::path fixture_dir_;
};

/// Structured report. Under `deterministic` the generation time and stage
/// timings are omitted so repeated runs on the same data are byte-identical.
std::string RenderReportJson(RunReport const& report, bool deterministic,
                             std::string const& document_url_template =
                                 kDefaultDocumentUrlTemplate);

/// One CSV row per year: year,c_total,f,pcs,top_patent_id,top_patent_count.
std::string RenderReportTable(RunReport const& report);

}  // namespace pcs

#endif  // PCS_PIPELINE_H_
