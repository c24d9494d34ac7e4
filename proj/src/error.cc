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

#include "pcs/error.h"

namespace pcs {

std::string_view ErrorName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kEmptyQuery:
      return "EmptyQuery";
    case ErrorCode::kUnterminatedPhrase:
      return "UnterminatedPhrase";
    case ErrorCode::kInvalidPatentId:
      return "InvalidPatentId";
    case ErrorCode::kApiUnreachable:
      return "ApiUnreachable";
    case ErrorCode::kApiSchemaMismatch:
      return "ApiSchemaMismatch";
    case ErrorCode::kPageCapExceeded:
      return "PageCapExceeded";
    case ErrorCode::kApiRejected:
      return "ApiRejected";
    case ErrorCode::kCorruptEntry:
      return "CorruptEntry";
    case ErrorCode::kStorageFull:
      return "StorageFull";
    case ErrorCode::kPermissionDenied:
      return "PermissionDenied";
    case ErrorCode::kUnknownFixture:
      return "UnknownFixture";
    case ErrorCode::kFixtureQueryMismatch:
      return "FixtureQueryMismatch";
    case ErrorCode::kIoError:
      return "IoError";
    case ErrorCode::kEmptyCorpus:
      return "EmptyCorpus";
    case ErrorCode::kNoPositivePeak:
      return "NoPositivePeak";
  }
  return "Unknown";
}

}  // namespace pcs
