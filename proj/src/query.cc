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

#include "pcs/query.h"

#include <algorithm>
#include <cctype>
#include <optional>

#include "pcs/error.h"

namespace pcs {
namespace {

bool IsSpace(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return s;
}

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

std::optional<QueryClause> ParseSegment(std::string_view segment) {
  segment = Trim(segment);
  if (segment.empty()) return std::nullopt;

  auto const quotes = std::count(segment.begin(), segment.end(), '"');
  if (quotes == 0) {
    return QueryClause{ClauseKind::kKeyword, std::string(segment)};
  }
  if (quotes == 2 && segment.front() == '"' && segment.back() == '"') {
    auto inner = Trim(segment.substr(1, segment.size() - 2));
    if (inner.empty()) return std::nullopt;
    return QueryClause{ClauseKind::kPhrase, std::string(inner)};
  }
  throw Error(ErrorCode::kInvalidArgument,
              "query segment mixes quoted and unquoted text: " +
                  std::string(segment));
}

}  // namespace

Query ParseQuery(std::string_view input) {
  std::vector<std::string_view> segments;
  bool in_quote = false;
  std::size_t start = 0;
  for (std::size_t i = 0; i < input.size(); ++i) {
    char const c = input[i];
    if (c == '"') {
      in_quote = !in_quote;
    } else if (c == ',' && !in_quote) {
      segments.push_back(input.substr(start, i - start));
      start = i + 1;
    }
  }
  if (in_quote) {
    throw Error(ErrorCode::kUnterminatedPhrase,
                "unterminated phrase: a double quote is never closed");
  }
  segments.push_back(input.substr(start));

  Query query;
  query.raw = std::string(input);
  std::vector<std::pair<ClauseKind, std::string>> seen;
  for (auto segment : segments) {
    auto clause = ParseSegment(segment);
    if (!clause) continue;
    auto key = std::make_pair(clause->kind, Lower(clause->text));
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(std::move(key));
    query.clauses.push_back(*std::move(clause));
  }
  if (query.clauses.empty()) {
    throw Error(ErrorCode::kEmptyQuery, "query has no non-empty clause");
  }
  return query;
}

std::string RenderQuery(Query const& query) {
  std::string out;
  for (auto const& clause : query.clauses) {
    if (!out.empty()) out += ", ";
    if (clause.kind == ClauseKind::kPhrase) {
      out += '"';
      out += clause.text;
      out += '"';
    } else {
      out += clause.text;
    }
  }
  return out;
}

}  // namespace pcs
