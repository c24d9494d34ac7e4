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

#ifndef PCS_QUERY_H_
#define PCS_QUERY_H_

#include <string>
#include <string_view>
#include <vector>

namespace pcs {

enum class ClauseKind { kKeyword, kPhrase };

/// One OR-branch of a search. `text` is trimmed and keeps the user's casing;
/// matching against titles and abstracts is case-insensitive and happens
/// upstream in the search API.
struct QueryClause {
  ClauseKind kind = ClauseKind::kKeyword;
  std::string text;

  friend bool operator==(QueryClause const&, QueryClause const&) = default;
};

/// An OR-combination of keyword and phrase clauses, in input order with
/// case-insensitive duplicates removed. Equality ignores `raw`.
struct Query {
  std::vector<QueryClause> clauses;
  std::string raw;

  friend bool operator==(Query const& a, Query const& b) {
    return a.clauses == b.clauses;
  }
};

/// Parses a search-box string such as `RNAi, "interference RNA", siRNA`.
///
/// Commas outside double quotes separate clauses. A segment wrapped in double
/// quotes is a phrase (commas inside it are literal); any other segment is a
/// keyword. Blank segments are dropped.
///
/// Throws Error with kEmptyQuery when nothing remains, kUnterminatedPhrase for
/// an unclosed quote, and kInvalidArgument for a segment that mixes quoted and
/// bare text (e.g. `RNA "interference"`).
Query ParseQuery(std::string_view input);

/// Canonical form: clauses joined by ", ", phrases in double quotes.
/// ParseQuery(RenderQuery(q)) == q for every parsed query.
std::string RenderQuery(Query const& query);

}  // namespace pcs

#endif  // PCS_QUERY_H_
