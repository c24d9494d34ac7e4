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

#ifndef PCS_CACHE_STORE_H_
#define PCS_CACHE_STORE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcs/patent.h"
#include "pcs/query.h"

namespace pcs {

inline constexpr int kCacheFormatVersion = 1;
inline constexpr std::string_view kCacheFileExtension = ".pcs-cache";

/// Lowercase hex SHA-256 of `data`.
std::string Sha256Hex(std::string_view data);

/// Stable key for one (query, dialect, page size) combination.
std::string CacheKey(Query const& query, std::string_view dialect,
                     int page_size);

struct CacheEntry {
  std::string key;
  std::string query;    // canonical rendering, informational
  std::string dialect;  // informational
  std::string created_at;         // UTC, ISO-8601
  std::string api_snapshot_date;  // when the data was pulled
  FetchResult payload;

  friend bool operator==(CacheEntry const&, CacheEntry const&) = default;
};

/// Serializes an entry in the on-disk format: a JSON document with a format
/// version, a SHA-256 checksum of the payload, and one line per patent.
std::string EncodeEntry(CacheEntry const& entry);

/// Inverse of EncodeEntry. Throws Error(kCorruptEntry) on parse failure,
/// version mismatch or checksum mismatch.
CacheEntry DecodeEntry(std::string_view text);

enum class CacheStatus { kHit, kMiss, kCorrupt };

struct CacheLookup {
  CacheStatus status = CacheStatus::kMiss;
  std::optional<CacheEntry> entry;  // set only for kHit
  std::string diagnostic;           // set for kCorrupt
};

enum class CacheAccess { kWritable, kReadOnly, kMissing };

std::string_view CacheAccessName(CacheAccess access);

/// One file per entry at <dir>/<key>.pcs-cache. Writes go to a unique
/// temporary file in the same directory and are renamed into place, so a
/// reader sees either the previous entry or the new one, never a torn file.
class CacheStore {
 public:
  explicit CacheStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::filesystem::path const& dir() const { return dir_; }
  std::filesystem::path PathFor(std::string_view key) const;

  /// kCorrupt entries behave like misses for callers that only look at
  /// `entry`; the diagnostic says what was wrong.
  CacheLookup Get(std::string_view key) const;

  /// Creates the directory if needed. Throws Error with kPermissionDenied,
  /// kStorageFull or kIoError.
  void Put(CacheEntry const& entry) const;

  /// Keys of all entries, sorted.
  std::vector<std::string> Keys() const;
  /// Removes every entry; returns how many were removed.
  std::size_t Clear() const;

  CacheAccess Probe() const;

 private:
  std::filesystem::path dir_;
};

/// Reads <dir>/<name>.pcs-cache through the same decoder as the cache and
/// marks the payload as fixture data. Throws Error(kUnknownFixture) if the
/// name is not a plain file name or the file does not exist, and
/// Error(kCorruptEntry) if it does not decode.
CacheEntry LoadFixture(std::filesystem::path const& dir, std::string_view name);

/// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string UtcTimestamp();
/// Current UTC date as "YYYY-MM-DD".
std::string UtcDate();

}  // namespace pcs

#endif  // PCS_CACHE_STORE_H_
