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

#ifndef PCS_PATENT_H_
#define PCS_PATENT_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pcs {

/// A normalized US patent number: no "US" prefix, no commas, no kind code,
/// no leading zeros. Design, plant, reissue and similar documents keep their
/// letter prefix ("D345678", "PP12345", "RE37000").
///
/// Ordering puts plain utility numbers first (numerically), then prefixed
/// documents by prefix and number. Ties in "most referenced patent" resolve
/// to the smallest id under this order.
class PatentId {
 public:
  PatentId() = default;

  /// Normalizes `raw` ("US 6,506,559 B1" -> "6506559"). Throws Error with
  /// kInvalidPatentId when nothing usable remains.
  static PatentId Parse(std::string_view raw);
  static std::optional<PatentId> TryParse(std::string_view raw);

  std::string const& str() const { return value_; }
  std::string_view prefix() const;
  std::string_view digits() const;
  bool empty() const { return value_.empty(); }

  friend bool operator==(PatentId const& a, PatentId const& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(PatentId const& a,
                                          PatentId const& b);

 private:
  explicit PatentId(std::string value) : value_(std::move(value)) {}
  std::string value_;
};

struct Date {
  int year = 0;
  int month = 0;
  int day = 0;

  /// Accepts "YYYY-MM-DD". Returns nullopt for malformed or impossible
  /// dates, including the all-zero placeholder some APIs emit.
  static std::optional<Date> Parse(std::string_view text);
  std::string ToString() const;

  friend auto operator<=>(Date const&, Date const&) = default;
};

/// Grant years outside [1790, current year] are treated as unknown.
bool IsPlausibleGrantYear(int year);

struct CitedReference {
  PatentId cited_id;
  std::optional<int> grant_year;  // nullopt: unknown

  friend bool operator==(CitedReference const&,
                         CitedReference const&) = default;
};

struct CitingPatent {
  PatentId id;
  std::string title;
  Date grant_date;
  std::vector<CitedReference> cited;

  friend bool operator==(CitingPatent const&, CitingPatent const&) = default;
};

enum class DataSource { kLive, kCache, kFixture };

std::string_view DataSourceName(DataSource source);
std::optional<DataSource> ParseDataSource(std::string_view name);

struct FetchResult {
  std::vector<CitingPatent> patents;
  std::int64_t total_reported = 0;
  int pages_fetched = 0;
  DataSource source = DataSource::kLive;
  /// Wire citations dropped because the cited number could not be
  /// normalized. Diagnostics only.
  std::int64_t skipped_invalid_citations = 0;

  friend bool operator==(FetchResult const&, FetchResult const&) = default;
};

/// Removes repeated cited ids, keeping the first occurrence. If the kept
/// entry has an unknown year and a later duplicate knows it, the year is
/// adopted.
void CollapseDuplicateCitations(std::vector<CitedReference>& cited);

/// Throws Error(kInvalidArgument) naming the first violated FetchResult
/// invariant: duplicate citing ids, duplicate cited ids within a patent,
/// implausible known years, or pages_fetched < 1 with non-empty patents.
void ValidateFetchResult(FetchResult const& result);

}  // namespace pcs

template <>
struct std::hash<pcs::PatentId> {
  std::size_t operator()(pcs::PatentId const& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};

#endif  // PCS_PATENT_H_
