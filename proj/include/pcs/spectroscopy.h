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

#ifndef PCS_SPECTROSCOPY_H_
#define PCS_SPECTROSCOPY_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pcs/aggregator.h"
#include "pcs/patent.h"
#include "pcs/score.h"

namespace pcs {

/// kPcs ranks years by the share-weighted deviation, kRpys by the plain
/// median deviation.
enum class Mode { kPcs, kRpys };

std::string_view ModeName(Mode mode);
std::optional<Mode> ParseMode(std::string_view name);

/// Signed deviation of each count from the median of its five-year window
/// [t-2, t+2]. Near the ends the window is cut to the years that exist; an
/// even-sized window takes the mean of its two middle values. Series shorter
/// than three years have no usable window and detrend to all zeros.
std::vector<Score> Detrend(std::span<std::int64_t const> counts);

/// Weights each deviation by the share of that year's citations going to its
/// most referenced patent: f[t] * top_count / c_total. Years without a bin
/// get 0. `first_year` is the year of f[0].
std::vector<Score> Normalize(std::span<Score const> f, int first_year,
                             std::map<int, YearBin> const& bins);

struct YearRange {
  int first = 0;
  int last = 0;
};

/// Immutable year-indexed spectrum. c, f and pcs cover [start_year, end_year]
/// contiguously; gap years inside the range hold zero citations.
class Spectrum {
 public:
  int start_year() const { return start_year_; }
  int end_year() const { return end_year_; }
  std::size_t size() const { return c_.size(); }
  int YearAt(std::size_t index) const {
    return start_year_ + static_cast<int>(index);
  }
  Mode mode() const { return mode_; }

  std::map<int, YearBin> const& bins() const { return bins_; }
  YearBin const* BinFor(int year) const;

  std::vector<std::int64_t> const& c() const { return c_; }
  std::vector<Score> const& f() const { return f_; }
  std::vector<Score> const& pcs() const { return pcs_; }
  /// pcs for kPcs, f for kRpys.
  std::vector<Score> const& active() const {
    return mode_ == Mode::kPcs ? pcs_ : f_;
  }

 private:
  friend Spectrum BuildSpectrum(std::vector<YearBin>, Mode,
                                std::optional<YearRange>);

  int start_year_ = 0;
  int end_year_ = 0;
  Mode mode_ = Mode::kPcs;
  std::map<int, YearBin> bins_;
  std::vector<std::int64_t> c_;
  std::vector<Score> f_;
  std::vector<Score> pcs_;
};

/// Builds the spectrum over the cited years of `bins` (first to last year
/// with a citation). `display` may widen the reported range, e.g. to align
/// two queries on one axis; the extra years report c = f = pcs = 0 and do
/// not take part in detrending. Throws Error(kEmptyCorpus) for no bins and
/// Error(kInvalidArgument) for duplicate years or a display range that does
/// not cover the cited years.
Spectrum BuildSpectrum(std::vector<YearBin> bins, Mode mode,
                       std::optional<YearRange> display = std::nullopt);

struct Peak {
  int year = 0;
  PatentId patent;
  Score score;

  friend bool operator==(Peak const&, Peak const&) = default;
};

struct LandmarkResult {
  PatentId patent;
  int year = 0;
  Score score;
  std::vector<Peak> runner_ups;
  double odds = 0.0;
  Mode mode = Mode::kPcs;
};

/// Positive local maxima of the active series, highest first (ties: earlier
/// year). A plateau reports its first year.
std::vector<Peak> FindPeaks(Spectrum const& spectrum);

/// Picks the year with the highest positive active score (ties: earliest) and
/// returns its most referenced patent together with the next `top_k` peaks.
/// Throws Error(kNoPositivePeak) when no score is positive.
LandmarkResult SelectLandmark(Spectrum const& spectrum,
                              std::int64_t unique_cited_count,
                              std::size_t top_k = 5);

/// Probability of naming the landmark by picking one cited patent at random.
double ChanceOdds(std::int64_t unique_cited_count);

}  // namespace pcs

#endif  // PCS_SPECTROSCOPY_H_
