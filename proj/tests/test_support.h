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

// Random generators and small helpers shared by the test binaries.

#ifndef PCS_TESTS_TEST_SUPPORT_H_
#define PCS_TESTS_TEST_SUPPORT_H_

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pcs/aggregator.h"
#include "pcs/patent.h"
#include "pcs/score.h"

namespace pcs::testing {

inline std::filesystem::path FixtureDir() { return PCS_DEFAULT_FIXTURE_DIR; }

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("pcs-test-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(TempDir const&) = delete;
  TempDir& operator=(TempDir const&) = delete;

  std::filesystem::path const& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// A directory this process cannot create files in. Mode bits do not stop
// root, so root gets sysfs instead. Empty when neither works.
inline std::filesystem::path ReadOnlyDir(TempDir const& scratch) {
  namespace fs = std::filesystem;
  auto probe_fails = [](fs::path const& dir) {
    auto const file = dir / ".pcs-write-probe";
    int fd = ::open(file.c_str(), O_WRONLY | O_CREAT | O_EXCL, 0644);
    if (fd < 0) return true;
    ::close(fd);
    ::unlink(file.c_str());
    return false;
  };
  auto const dir = scratch.path() / "read-only";
  fs::create_directories(dir);
  fs::permissions(dir, fs::perms::owner_read | fs::perms::owner_exec);
  if (probe_fails(dir)) return dir;
  if (fs::is_directory("/sys") && probe_fails("/sys")) return "/sys";
  return {};
}

using Rng = std::mt19937_64;

inline int Uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool Coin(Rng& rng, double p) {
  return std::bernoulli_distribution(p)(rng);
}

// A patent id, sometimes letter-prefixed (design, reissue, plant...).
inline PatentId RandomPatentId(Rng& rng) {
  static constexpr char const* kPrefixes[] = {"D", "RE", "PP", "H", "T", "X",
                                              "RX", "AI"};
  std::string raw;
  if (Coin(rng, 0.2)) raw = kPrefixes[Uniform(rng, 0, 7)];
  raw += std::to_string(Uniform(rng, 1, 9999999));
  return PatentId::Parse(raw);
}

inline Date RandomDate(Rng& rng, int first_year, int last_year) {
  return Date{Uniform(rng, first_year, last_year), Uniform(rng, 1, 12),
              Uniform(rng, 1, 28)};
}

// A FetchResult that satisfies ValidateFetchResult: distinct citing ids and
// distinct cited ids within each citing patent. Roughly one reference in
// eight has an unknown year.
inline FetchResult RandomFetchResult(Rng& rng, int max_patents = 12,
                                     int max_cited = 8) {
  FetchResult r;
  std::vector<PatentId> pool;
  int const pool_size = Uniform(rng, 1, 20);
  for (int i = 0; i < pool_size; ++i) pool.push_back(RandomPatentId(rng));
  std::map<PatentId, std::optional<int>> pool_year;
  for (auto const& id : pool) {
    pool_year[id] = Coin(rng, 0.125) ? std::nullopt
                                     : std::optional<int>(Uniform(rng, 1950, 2016));
  }

  std::set<PatentId> citing_ids;
  int const n = Uniform(rng, 0, max_patents);
  for (int i = 0; i < n; ++i) {
    CitingPatent p;
    do {
      p.id = RandomPatentId(rng);
    } while (!citing_ids.insert(p.id).second);
    p.title = "title " + std::to_string(i) + (Coin(rng, 0.3) ? " \"q\" \xc3\xa9" : "");
    p.grant_date = RandomDate(rng, 1976, 2017);
    std::set<PatentId> used;
    int const m = Uniform(rng, 0, max_cited);
    for (int j = 0; j < m; ++j) {
      auto const& id = pool[static_cast<std::size_t>(Uniform(rng, 0, pool_size - 1))];
      if (!used.insert(id).second) continue;
      p.cited.push_back({id, pool_year[id]});
    }
    r.patents.push_back(std::move(p));
  }
  r.total_reported = n;
  r.pages_fetched = n == 0 ? 0 : Uniform(rng, 1, 3);
  r.source = static_cast<DataSource>(Uniform(rng, 0, 2));
  r.skipped_invalid_citations = Uniform(rng, 0, 2);
  return r;
}

// Bins for a random corpus over a contiguous-ish year range.
inline std::vector<YearBin> RandomBins(Rng& rng, int max_years = 15) {
  std::vector<YearBin> bins;
  int const first = Uniform(rng, 1960, 2000);
  int const span = Uniform(rng, 1, max_years);
  for (int y = first; y < first + span; ++y) {
    if (y != first && Coin(rng, 0.15)) continue;  // gap year
    std::map<PatentId, std::int64_t> counts;
    int const patents = Uniform(rng, 1, 4);
    for (int i = 0; i < patents; ++i) {
      counts[PatentId::Parse(std::to_string(y * 1000 + i + 1))] = Uniform(rng, 1, 20);
    }
    bins.push_back(MakeYearBin(y, std::move(counts)));
  }
  return bins;
}

inline std::vector<YearBin> ScaleBins(std::vector<YearBin> bins, std::int64_t k) {
  for (auto& bin : bins) {
    auto counts = bin.counts;
    for (auto& [id, n] : counts) n *= k;
    bin = MakeYearBin(bin.year, std::move(counts));
  }
  return bins;
}

}  // namespace pcs::testing

#endif  // PCS_TESTS_TEST_SUPPORT_H_
