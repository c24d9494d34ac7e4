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

#include "pcs/cache_store.h"

#include <fcntl.h>
#include <openssl/evp.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <ctime>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "pcs/error.h"

namespace pcs {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

constexpr std::string_view kFormatName = "pcs-cache";
constexpr std::string_view kChecksumPrefix = "sha256:";

json PatentToJson(CitingPatent const& p) {
  json cited = json::array();
  for (auto const& ref : p.cited) {
    cited.push_back({{"id", ref.cited_id.str()},
                     {"year", ref.grant_year ? json(*ref.grant_year) : json()}});
  }
  return {{"id", p.id.str()},
          {"title", p.title},
          {"grant_date", p.grant_date.ToString()},
          {"cited", std::move(cited)}};
}

CitingPatent PatentFromJson(json const& j) {
  CitingPatent p;
  p.id = PatentId::Parse(j.at("id").get<std::string>());
  p.title = j.at("title").get<std::string>();
  auto date = Date::Parse(j.at("grant_date").get<std::string>());
  if (!date) throw Error(ErrorCode::kCorruptEntry, "bad grant_date");
  p.grant_date = *date;
  for (auto const& r : j.at("cited")) {
    CitedReference ref;
    ref.cited_id = PatentId::Parse(r.at("id").get<std::string>());
    if (auto const& y = r.at("year"); !y.is_null()) {
      ref.grant_year = y.get<int>();
    }
    p.cited.push_back(std::move(ref));
  }
  return p;
}

json PayloadToJson(FetchResult const& r) {
  json patents = json::array();
  for (auto const& p : r.patents) patents.push_back(PatentToJson(p));
  return {{"source", DataSourceName(r.source)},
          {"total_reported", r.total_reported},
          {"pages_fetched", r.pages_fetched},
          {"skipped_invalid_citations", r.skipped_invalid_citations},
          {"patents", std::move(patents)}};
}

FetchResult PayloadFromJson(json const& j) {
  FetchResult r;
  auto source = ParseDataSource(j.at("source").get<std::string>());
  if (!source) throw Error(ErrorCode::kCorruptEntry, "unknown source");
  r.source = *source;
  r.total_reported = j.at("total_reported").get<std::int64_t>();
  r.pages_fetched = j.at("pages_fetched").get<int>();
  r.skipped_invalid_citations =
      j.at("skipped_invalid_citations").get<std::int64_t>();
  for (auto const& p : j.at("patents")) r.patents.push_back(PatentFromJson(p));
  return r;
}

ErrorCode ErrnoToCode(int err) {
  switch (err) {
    case ENOSPC:
    case EDQUOT:
      return ErrorCode::kStorageFull;
    case EACCES:
    case EPERM:
    case EROFS:
      return ErrorCode::kPermissionDenied;
    default:
      return ErrorCode::kIoError;
  }
}

[[noreturn]] void ThrowErrno(int err, std::string const& what) {
  throw Error(ErrnoToCode(err), what + ": " + std::strerror(err));
}

std::string TempName(std::string_view key) {
  static std::atomic<unsigned> counter{0};
  std::ostringstream os;
  os << '.' << key << ".tmp." << ::getpid() << '.'
     << std::hash<std::thread::id>{}(std::this_thread::get_id()) << '.'
     << counter.fetch_add(1);
  return os.str();
}

void WriteAll(int fd, std::string const& data, fs::path const& path) {
  std::size_t written = 0;
  while (written < data.size()) {
    auto n = ::write(fd, data.data() + written, data.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      ThrowErrno(errno, "write " + path.string());
    }
    written += static_cast<std::size_t>(n);
  }
}

std::string FormatUtc(char const* pattern) {
  auto const now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, pattern, &tm);
  return buf;
}

}  // namespace

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error(ErrorCode::kIoError, "SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

std::string CacheKey(Query const& query, std::string_view dialect,
                     int page_size) {
  std::string material = "pcs-cache-key/v1\n";
  material += RenderQuery(query);
  material += '\n';
  material += dialect;
  material += '\n';
  material += std::to_string(page_size);
  return Sha256Hex(material);
}

std::string EncodeEntry(CacheEntry const& entry) {
  auto const payload = PayloadToJson(entry.payload);
  auto const checksum = Sha256Hex(payload.dump());

  // Pretty header, one line per patent: readable and diff-friendly.
  std::string out = "{\n";
  auto field = [&](char const* name, json const& value) {
    out += "  \"";
    out += name;
    out += "\": ";
    out += value.dump();
    out += ",\n";
  };
  field("format", kFormatName);
  field("format_version", kCacheFormatVersion);
  field("key", entry.key);
  field("query", entry.query);
  field("dialect", entry.dialect);
  field("created_at", entry.created_at);
  field("api_snapshot_date", entry.api_snapshot_date);
  field("checksum", std::string(kChecksumPrefix) + checksum);
  out += "  \"payload\": {\n";
  for (auto const* name : {"source", "total_reported", "pages_fetched",
                           "skipped_invalid_citations"}) {
    out += "    \"";
    out += name;
    out += "\": ";
    out += payload.at(name).dump();
    out += ",\n";
  }
  out += "    \"patents\": [";
  auto const& patents = payload.at("patents");
  for (std::size_t i = 0; i < patents.size(); ++i) {
    out += i == 0 ? "\n      " : ",\n      ";
    out += patents[i].dump();
  }
  out += patents.empty() ? "]\n" : "\n    ]\n";
  out += "  }\n}\n";
  return out;
}

CacheEntry DecodeEntry(std::string_view text) {
  try {
    auto const doc = json::parse(text);
    if (doc.at("format").get<std::string>() != kFormatName) {
      throw Error(ErrorCode::kCorruptEntry, "not a pcs-cache document");
    }
    if (auto v = doc.at("format_version").get<int>(); v != kCacheFormatVersion) {
      throw Error(ErrorCode::kCorruptEntry,
                  "unsupported format_version " + std::to_string(v));
    }
    auto const& payload = doc.at("payload");
    auto const expected = doc.at("checksum").get<std::string>();
    if (expected != std::string(kChecksumPrefix) + Sha256Hex(payload.dump())) {
      throw Error(ErrorCode::kCorruptEntry, "checksum mismatch");
    }
    CacheEntry entry;
    entry.key = doc.at("key").get<std::string>();
    entry.query = doc.at("query").get<std::string>();
    entry.dialect = doc.at("dialect").get<std::string>();
    entry.created_at = doc.at("created_at").get<std::string>();
    entry.api_snapshot_date = doc.at("api_snapshot_date").get<std::string>();
    entry.payload = PayloadFromJson(payload);
    ValidateFetchResult(entry.payload);
    return entry;
  } catch (json::exception const& e) {
    throw Error(ErrorCode::kCorruptEntry, std::string("unreadable entry: ") + e.what());
  } catch (Error const& e) {
    if (e.code() == ErrorCode::kCorruptEntry) throw;
    throw Error(ErrorCode::kCorruptEntry, std::string("invalid entry: ") + e.what());
  }
}

std::string_view CacheAccessName(CacheAccess access) {
  switch (access) {
    case CacheAccess::kWritable:
      return "writable";
    case CacheAccess::kReadOnly:
      return "read-only";
    case CacheAccess::kMissing:
      return "missing";
  }
  return "missing";
}

fs::path CacheStore::PathFor(std::string_view key) const {
  return dir_ / (std::string(key) + std::string(kCacheFileExtension));
}

CacheLookup CacheStore::Get(std::string_view key) const {
  auto const path = PathFor(key);
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream buf;
  buf << in.rdbuf();
  CacheLookup lookup;
  try {
    auto entry = DecodeEntry(buf.str());
    if (entry.key != key) {
      throw Error(ErrorCode::kCorruptEntry, "entry key does not match file name");
    }
    lookup.status = CacheStatus::kHit;
    lookup.entry = std::move(entry);
  } catch (Error const& e) {
    lookup.status = CacheStatus::kCorrupt;
    lookup.diagnostic = path.string() + ": " + e.what();
  }
  return lookup;
}

void CacheStore::Put(CacheEntry const& entry) const {
  ValidateFetchResult(entry.payload);
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) ThrowErrno(ec.value(), "create cache directory " + dir_.string());

  auto const data = EncodeEntry(entry);
  auto const tmp = dir_ / TempName(entry.key);
  int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_EXCL | O_CLOEXEC, 0644);
  if (fd < 0) ThrowErrno(errno, "create " + tmp.string());
  try {
    WriteAll(fd, data, tmp);
    if (::fsync(fd) != 0) ThrowErrno(errno, "fsync " + tmp.string());
  } catch (...) {
    ::close(fd);
    ::unlink(tmp.c_str());
    throw;
  }
  if (::close(fd) != 0) {
    int const err = errno;
    ::unlink(tmp.c_str());
    ThrowErrno(err, "close " + tmp.string());
  }
  auto const dest = PathFor(entry.key);
  if (::rename(tmp.c_str(), dest.c_str()) != 0) {
    int const err = errno;
    ::unlink(tmp.c_str());
    ThrowErrno(err, "rename into " + dest.string());
  }
}

std::vector<std::string> CacheStore::Keys() const {
  std::vector<std::string> keys;
  std::error_code ec;
  for (auto const& e : fs::directory_iterator(dir_, ec)) {
    auto const name = e.path().filename().string();
    if (name.front() == '.' || e.path().extension() != kCacheFileExtension) {
      continue;
    }
    keys.push_back(e.path().stem().string());
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::size_t CacheStore::Clear() const {
  std::size_t removed = 0;
  for (auto const& key : Keys()) {
    std::error_code ec;
    if (fs::remove(PathFor(key), ec)) {
      ++removed;
    } else if (ec) {
      ThrowErrno(ec.value(), "remove " + PathFor(key).string());
    }
  }
  return removed;
}

CacheAccess CacheStore::Probe() const {
  std::error_code ec;
  auto target = dir_;
  if (!fs::is_directory(dir_, ec)) {
    // A missing cache directory is fine as long as Put could create it.
    target = dir_.has_parent_path() ? dir_.parent_path() : fs::path(".");
    if (!fs::is_directory(target, ec)) return CacheAccess::kMissing;
  }
  // Permission bits lie for privileged users; try an actual write.
  auto const probe = target / TempName("probe");
  int fd = ::open(probe.c_str(), O_WRONLY | O_CREAT | O_EXCL | O_CLOEXEC, 0644);
  if (fd < 0) {
    return target == dir_ ? CacheAccess::kReadOnly : CacheAccess::kMissing;
  }
  ::close(fd);
  ::unlink(probe.c_str());
  return CacheAccess::kWritable;
}

CacheEntry LoadFixture(fs::path const& dir, std::string_view name) {
  bool const plain =
      !name.empty() && name.find('/') == std::string_view::npos &&
      name.find('\\') == std::string_view::npos && name.front() != '.';
  auto const path = dir / (std::string(name) + std::string(kCacheFileExtension));
  std::ifstream in(path, std::ios::binary);
  if (!plain || !in) {
    throw Error(ErrorCode::kUnknownFixture,
                "unknown fixture '" + std::string(name) + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  auto entry = DecodeEntry(buf.str());
  entry.payload.source = DataSource::kFixture;
  return entry;
}

std::string UtcTimestamp() { return FormatUtc("%Y-%m-%dT%H:%M:%SZ"); }
std::string UtcDate() { return FormatUtc("%Y-%m-%d"); }

}  // namespace pcs
