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

#include "pcs/patent.h"

#include <array>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <unordered_map>
#include <unordered_set>

#include "pcs/error.h"

namespace pcs {
namespace {

// Longest first so "PP" wins over a hypothetical "P".
constexpr std::array<std::string_view, 8> kPrefixes = {
    "PP", "RE", "RX", "AI", "D", "H", "T", "X"};

bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsUpper(char c) { return c >= 'A' && c <= 'Z'; }

std::size_t PrefixLength(std::string_view v) {
  std::size_t n = 0;
  while (n < v.size() && IsUpper(v[n])) ++n;
  return n;
}

int CurrentYear() {
  auto const now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  return tm.tm_year + 1900;
}

bool IsLeapYear(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int DaysInMonth(int y, int m) {
  static constexpr std::array<int, 12> kDays = {31, 28, 31, 30, 31, 30,
                                                31, 31, 30, 31, 30, 31};
  return m == 2 && IsLeapYear(y) ? 29 : kDays[m - 1];
}

}  // namespace

std::optional<PatentId> PatentId::TryParse(std::string_view raw) {
  std::string s;
  s.reserve(raw.size());
  for (char c : raw) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '-') {
      continue;
    }
    s += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  if (s.size() > 2 && s.compare(0, 2, "US") == 0) s.erase(0, 2);

  std::string_view rest = s;
  std::string_view prefix;
  for (auto p : kPrefixes) {
    if (rest.size() > p.size() && rest.substr(0, p.size()) == p &&
        IsDigit(rest[p.size()])) {
      prefix = p;
      rest.remove_prefix(p.size());
      break;
    }
  }

  std::size_t n = 0;
  while (n < rest.size() && IsDigit(rest[n])) ++n;
  std::string_view digits = rest.substr(0, n);
  std::string_view kind = rest.substr(n);
  // Kind code: one letter, optionally followed by one digit (B1, B2, E, S).
  bool const kind_ok =
      kind.empty() || (IsUpper(kind[0]) &&
                       (kind.size() == 1 || (kind.size() == 2 && IsDigit(kind[1]))));
  if (digits.empty() || !kind_ok) return std::nullopt;
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  if (digits == "0") return std::nullopt;

  return PatentId(std::string(prefix) + std::string(digits));
}

PatentId PatentId::Parse(std::string_view raw) {
  auto id = TryParse(raw);
  if (!id) {
    throw Error(ErrorCode::kInvalidPatentId,
                "not a US patent number: '" + std::string(raw) + "'");
  }
  return *std::move(id);
}

std::string_view PatentId::prefix() const {
  return std::string_view(value_).substr(0, PrefixLength(value_));
}

std::string_view PatentId::digits() const {
  return std::string_view(value_).substr(PrefixLength(value_));
}

std::strong_ordering operator<=>(PatentId const& a, PatentId const& b) {
  auto const pa = a.prefix();
  auto const pb = b.prefix();
  if (pa.empty() != pb.empty()) {
    return pa.empty() ? std::strong_ordering::less
                      : std::strong_ordering::greater;
  }
  if (auto c = pa.compare(pb); c != 0) return c <=> 0;
  auto const da = a.digits();
  auto const db = b.digits();
  if (da.size() != db.size()) return da.size() <=> db.size();
  return da.compare(db) <=> 0;
}

std::optional<Date> Date::Parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    return std::nullopt;
  }
  auto number = [&](std::size_t pos, std::size_t len) -> int {
    int v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
      if (!IsDigit(text[i])) return -1;
      v = v * 10 + (text[i] - '0');
    }
    return v;
  };
  Date d{number(0, 4), number(5, 2), number(8, 2)};
  if (d.year <= 0 || d.month < 1 || d.month > 12 || d.day < 1 ||
      d.day > DaysInMonth(d.year, d.month)) {
    return std::nullopt;
  }
  return d;
}

std::string Date::ToString() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
  return buf;
}

bool IsPlausibleGrantYear(int year) {
  static int const kCurrentYear = CurrentYear();
  return year >= 1790 && year <= kCurrentYear;
}

std::string_view DataSourceName(DataSource source) {
  switch (source) {
    case DataSource::kLive:
      return "live";
    case DataSource::kCache:
      return "cache";
    case DataSource::kFixture:
      return "fixture";
  }
  return "live";
}

std::optional<DataSource> ParseDataSource(std::string_view name) {
  if (name == "live") return DataSource::kLive;
  if (name == "cache") return DataSource::kCache;
  if (name == "fixture") return DataSource::kFixture;
  return std::nullopt;
}

void CollapseDuplicateCitations(std::vector<CitedReference>& cited) {
  std::vector<CitedReference> out;
  out.reserve(cited.size());
  std::unordered_map<PatentId, std::size_t> index;
  for (auto& ref : cited) {
    auto [it, inserted] = index.emplace(ref.cited_id, out.size());
    if (inserted) {
      out.push_back(std::move(ref));
    } else if (!out[it->second].grant_year && ref.grant_year) {
      out[it->second].grant_year = ref.grant_year;
    }
  }
  cited = std::move(out);
}

void ValidateFetchResult(FetchResult const& result) {
  auto fail = [](std::string const& what) {
    throw Error(ErrorCode::kInvalidArgument, "invalid fetch result: " + what);
  };
  if (!result.patents.empty() && result.pages_fetched < 1) {
    fail("pages_fetched must be >= 1 when patents are present");
  }
  std::unordered_set<PatentId> citing;
  for (auto const& p : result.patents) {
    if (p.id.empty()) fail("empty citing patent id");
    if (!citing.insert(p.id).second) fail("duplicate citing patent " + p.id.str());
    std::unordered_set<PatentId> cited;
    for (auto const& ref : p.cited) {
      if (ref.cited_id.empty()) fail("empty cited id in " + p.id.str());
      if (!cited.insert(ref.cited_id).second) {
        fail("duplicate citation " + ref.cited_id.str() + " in " + p.id.str());
      }
      if (ref.grant_year && !IsPlausibleGrantYear(*ref.grant_year)) {
        fail("implausible grant year " + std::to_string(*ref.grant_year));
      }
    }
  }
}

}  // namespace pcs
