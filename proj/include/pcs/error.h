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

#ifndef PCS_ERROR_H_
#define PCS_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pcs {

/// Every failure the pipeline can surface. The numeric values double as the
/// CLI exit codes, so they are part of the public contract and must never be
/// renumbered.
enum class ErrorCode : int {
  kInvalidArgument = 3,
  kEmptyQuery = 10,
  kUnterminatedPhrase = 11,
  kInvalidPatentId = 12,
  kApiUnreachable = 20,
  kApiSchemaMismatch = 21,
  kPageCapExceeded = 22,
  kApiRejected = 23,
  kCorruptEntry = 30,
  kStorageFull = 31,
  kPermissionDenied = 32,
  kUnknownFixture = 33,
  kFixtureQueryMismatch = 34,
  kIoError = 35,
  kEmptyCorpus = 40,
  kNoPositivePeak = 41,
};

/// Stable identifier, e.g. "EmptyQuery".
std::string_view ErrorName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string const& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const { return ErrorName(code_); }

 private:
  ErrorCode code_;
};

}  // namespace pcs

#endif  // PCS_ERROR_H_
