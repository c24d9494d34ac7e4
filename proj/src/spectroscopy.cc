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

#include "pcs/spectroscopy.h"

#include <algorithm>
#include <array>
#include <string>

#include "pcs/error.h"

namespace pcs {
namespace {

constexpr std::size_t kHalfWindow = 2;
constexpr std::size_t kMinSeriesForWindow = 3;

// Median of at most five values, as an exact half-integer.
Score WindowMedian(std::span<std::int64_t const> window) {
  std::array<std::int64_t, 2 * kHalfWindow + 1> buf{};
  std::copy(window.begin(), window.end(), buf.begin());
  auto const n = window.size();
  std::sort(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(n));
  if (n % 2 == 1) return Score(buf[n / 2]);
  return Score::Ratio(buf[n / 2 - 1] + buf[n / 2], 2);
}

}  // namespace

std::string_view ModeName(Mode mode) {
  return mode == Mode::kPcs ? "pcs" : "rpys";
}

std::optional<Mode> ParseMode(std::string_view name) {
  if (name == "pcs" || name == "PCS") return Mode::kPcs;
  if (name == "rpys" || name == "RPYS") return Mode::kRpys;
  return std::nullopt;
}

std::vector<Score> Detrend(std::span<std::int64_t const> counts) {
  std::vector<Score> f(counts.size());
  if (counts.size() < kMinSeriesForWindow) return f;
  for (std::size_t t = 0; t < counts.size(); ++t) {
    auto const lo = t >= kHalfWindow ? t - kHalfWindow : 0;
    auto const hi = std::min(counts.size() - 1, t + kHalfWindow);
    f[t] = Score(counts[t]) - WindowMedian(counts.subspan(lo, hi - lo + 1));
  }
  return f;
}

std::vector<Score> Normalize(std::span<Score const> f, int first_year,
                             std::map<int, YearBin> const& bins) {
  std::vector<Score> pcs(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto it = bins.find(first_year + static_cast<int>(i));
    if (it == bins.end()) continue;
    pcs[i] = f[i] * Score::Ratio(it->second.top_count, it->second.c_total);
  }
  return pcs;
}

YearBin const* Spectrum::BinFor(int year) const {
  auto it = bins_.find(year);
  return it == bins_.end() ? nullptr : &it->second;
}

Spectrum BuildSpectrum(std::vector<YearBin> bins, Mode mode,
                       std::optional<YearRange> display) {
  if (bins.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "spectrum needs at least one year");
  }
  Spectrum s;
  s.mode_ = mode;
  for (auto& bin : bins) {
    auto const year = bin.year;
    if (!s.bins_.emplace(year, std::move(bin)).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate bin for year " + std::to_string(year));
    }
  }
  int const first = s.bins_.begin()->first;
  int const last = s.bins_.rbegin()->first;

  std::vector<std::int64_t> support(static_cast<std::size_t>(last - first + 1));
  for (auto const& [year, bin] : s.bins_) {
    support[static_cast<std::size_t>(year - first)] = bin.c_total;
  }
  auto f = Detrend(support);
  auto pcs = Normalize(f, first, s.bins_);

  YearRange range{first, last};
  if (display) {
    if (display->first > first || display->last < last) {
      throw Error(ErrorCode::kInvalidArgument,
                  "display range does not cover the cited years");
    }
    range = *display;
  }
  s.start_year_ = range.first;
  s.end_year_ = range.last;
  auto const n = static_cast<std::size_t>(range.last - range.first + 1);
  auto const offset = static_cast<std::size_t>(first - range.first);
  s.c_.assign(n, 0);
  s.f_.assign(n, Score());
  s.pcs_.assign(n, Score());
  std::copy(support.begin(), support.end(), s.c_.begin() + offset);
  std::copy(f.begin(), f.end(), s.f_.begin() + offset);
  std::copy(pcs.begin(), pcs.end(), s.pcs_.begin() + offset);
  return s;
}

std::vector<Peak> FindPeaks(Spectrum const& spectrum) {
  auto const& s = spectrum.active();
  std::vector<Peak> peaks;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].sign() <= 0) continue;
    bool const rises = i == 0 || s[i] > s[i - 1];
    bool const holds = i + 1 == s.size() || s[i] >= s[i + 1];
    if (!rises || !holds) continue;
    auto const year = spectrum.YearAt(i);
    // A positive score implies c > 0, so the bin exists.
    peaks.push_back(Peak{year, spectrum.BinFor(year)->top_id, s[i]});
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](Peak const& a, Peak const& b) { return a.score > b.score; });
  return peaks;
}

LandmarkResult SelectLandmark(Spectrum const& spectrum,
                              std::int64_t unique_cited_count,
                              std::size_t top_k) {
  auto peaks = FindPeaks(spectrum);
  if (peaks.empty()) {
    throw Error(ErrorCode::kNoPositivePeak,
                std::string("no year has a positive ") +
                    std::string(ModeName(spectrum.mode())) + " score");
  }
  LandmarkResult result;
  result.mode = spectrum.mode();
  result.patent = peaks.front().patent;
  result.year = peaks.front().year;
  result.score = peaks.front().score;
  result.odds = ChanceOdds(unique_cited_count);
  auto const n = std::min(top_k, peaks.size() - 1);
  result.runner_ups.assign(peaks.begin() + 1,
                           peaks.begin() + 1 + static_cast<std::ptrdiff_t>(n));
  return result;
}

double ChanceOdds(std::int64_t unique_cited_count) {
  if (unique_cited_count < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "chance odds need at least one cited patent");
  }
  return 1.0 / static_cast<double>(unique_cited_count);
}

}  // namespace pcs
