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

// Builds the bundled "rnai" and "cholesterol" fixtures.
//
// The upstream endpoint these case studies were pulled from no longer
// exists, so the corpora are synthesized: citing patents get plausible grant
// dates and numbers, every cited patent gets a grant year drawn from a smooth
// citation-age profile, and the well-known prior patents of each field are
// planted with their real numbers, grant dates and heavy citation counts.
// Output is byte-for-byte deterministic for a given seed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pcs/aggregator.h"
#include "pcs/cache_store.h"
#include "pcs/error.h"
#include "pcs/query.h"
#include "pcs/spectroscopy.h"

namespace {

using pcs::CitedReference;
using pcs::CitingPatent;
using pcs::Date;
using pcs::PatentId;

// First utility patent number issued in each year.
std::map<int, std::int64_t> const kFirstNumber = {
    {1930, 1742181}, {1935, 1985878}, {1940, 2185170}, {1945, 2366154},
    {1950, 2492944}, {1955, 2698434}, {1960, 2919443}, {1965, 3163865},
    {1970, 3487184}, {1975, 3858241}, {1976, 3930271}, {1977, 4000000},
    {1978, 4065812}, {1979, 4131952}, {1980, 4180867}, {1981, 4242757},
    {1982, 4308622}, {1983, 4366579}, {1984, 4423523}, {1985, 4490885},
    {1986, 4562596}, {1987, 4633822}, {1988, 4716594}, {1989, 4794652},
    {1990, 4890335}, {1991, 4980927}, {1992, 5077836}, {1993, 5175886},
    {1994, 5274846}, {1995, 5377359}, {1996, 5479658}, {1997, 5590420},
    {1998, 5704062}, {1999, 5855021}, {2000, 6009555}, {2001, 6167569},
    {2002, 6334220}, {2003, 6502808}, {2004, 6671884}, {2005, 6836899},
    {2006, 6981282}, {2007, 7155746}, {2008, 7313829}, {2009, 7472428},
    {2010, 7640598}, {2011, 7861317}, {2012, 8087094}, {2013, 8341762},
    {2014, 8621751}, {2015, 8925111}, {2016, 9226799}, {2017, 9532283},
    {2018, 9854977}};

// Linear interpolation between table rows.
std::int64_t FirstNumberOfYear(int year) {
  auto hi = kFirstNumber.lower_bound(year);
  if (hi->first == year) return hi->second;
  auto lo = std::prev(hi);
  double const t = double(year - lo->first) / double(hi->first - lo->first);
  return lo->second + std::llround(t * double(hi->second - lo->second));
}

// Platform-independent draws: only the raw engine output is standardized.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::int64_t Below(std::int64_t n) {
    return static_cast<std::int64_t>(engine_() % static_cast<std::uint64_t>(n));
  }
  double Unit() { return double(engine_() >> 11) * 0x1.0p-53; }
  template <typename T>
  T const& Pick(std::vector<T> const& v) {
    return v[static_cast<std::size_t>(Below(std::int64_t(v.size())))];
  }

 private:
  std::mt19937_64 engine_;
};

Date DateOf(int year, double fraction) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  bool const leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
  int day = std::clamp(int(fraction * (leap ? 366 : 365)), 0, leap ? 365 : 364);
  int month = 0;
  while (true) {
    int const len = kDays[month] + (month == 1 && leap ? 1 : 0);
    if (day < len) break;
    day -= len;
    ++month;
  }
  return Date{year, month + 1, day + 1};
}

struct Landmark {
  std::string number;
  Date grant_date;
  int citations;
};

struct FixtureSpec {
  std::string name;
  std::string query;
  std::uint64_t seed;
  int citing_count;
  int unique_cited;
  std::map<int, double> citing_year_weights;
  int last_citing_month;  // citing patents of the final year stop here
  std::function<double(int)> background_pairs;  // per cited year
  int first_cited_year;
  int last_cited_year;
  double noise;
  std::vector<Landmark> landmarks;
  int unknown_year_refs;
  int reissue_refs;
  int default_cap;                // max citations of a background patent
  std::map<int, int> year_caps;   // tighter caps for specific years
  std::vector<std::string> title_templates;
  std::vector<std::string> title_fillers;
};

struct CitedSlot {
  PatentId id;
  std::optional<Date> date;
  int indegree = 0;
};

// Largest-remainder split of `total` across `weights`.
std::vector<int> Apportion(std::vector<double> const& weights, int total) {
  double const sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<int> out(weights.size());
  std::vector<std::pair<double, std::size_t>> rem;
  int used = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    double const exact = sum > 0 ? weights[i] / sum * total : 0;
    out[i] = int(std::floor(exact));
    used += out[i];
    rem.emplace_back(exact - out[i], i);
  }
  std::stable_sort(rem.begin(), rem.end(),
                   [](auto const& a, auto const& b) { return a.first > b.first; });
  for (std::size_t k = 0; used < total; ++k, ++used) ++out[rem[k % rem.size()].second];
  return out;
}

class Builder {
 public:
  explicit Builder(FixtureSpec const& spec) : spec_(spec), rng_(spec.seed) {}

  pcs::CacheEntry Build() {
    for (auto const& l : spec_.landmarks) used_.insert(PatentId::Parse(l.number));
    MakeCitingPatents();
    MakeCitedPool();
    AssignCitations();

    pcs::FetchResult result;
    result.patents = std::move(citing_);
    result.total_reported = spec_.citing_count;
    result.pages_fetched = (spec_.citing_count + 999) / 1000;
    result.source = pcs::DataSource::kFixture;
    std::sort(result.patents.begin(), result.patents.end(),
              [](auto const& a, auto const& b) { return a.id < b.id; });

    auto const query = pcs::ParseQuery(spec_.query);
    pcs::CacheEntry entry;
    entry.key = pcs::CacheKey(query, "patentsview-legacy", 1000);
    entry.query = pcs::RenderQuery(query);
    entry.dialect = "patentsview-legacy";
    entry.created_at = "2026-10-16T00:00:00Z";
    entry.api_snapshot_date = "synthetic (modeled on 2017-02 PatentsView)";
    entry.payload = std::move(result);
    return entry;
  }

 private:
  PatentId FreshNumber(int year) {
    auto const lo = FirstNumberOfYear(year);
    auto const hi = FirstNumberOfYear(year + 1);
    while (true) {
      auto id = PatentId::Parse(std::to_string(lo + rng_.Below(hi - lo)));
      if (used_.insert(id).second) return id;
    }
  }

  Date DateForNumber(PatentId const& id, int year) {
    auto const lo = FirstNumberOfYear(year);
    auto const hi = FirstNumberOfYear(year + 1);
    auto const n = std::stoll(std::string(id.digits()));
    return DateOf(year, double(n - lo) / double(hi - lo));
  }

  std::string Title() {
    auto t = rng_.Pick(spec_.title_templates);
    auto const pos = t.find("{}");
    if (pos != std::string::npos) t.replace(pos, 2, rng_.Pick(spec_.title_fillers));
    return t;
  }

  void MakeCitingPatents() {
    std::vector<int> years;
    std::vector<double> weights;
    for (auto const& [y, w] : spec_.citing_year_weights) {
      years.push_back(y);
      weights.push_back(w);
    }
    auto const counts = Apportion(weights, spec_.citing_count);
    int const final_year = years.back();
    for (std::size_t i = 0; i < years.size(); ++i) {
      for (int k = 0; k < counts[i]; ++k) {
        CitingPatent p;
        if (years[i] == final_year) {
          // Only the first months of the final year are in the snapshot.
          auto const lo = FirstNumberOfYear(final_year);
          auto const span = (FirstNumberOfYear(final_year + 1) - lo) *
                            spec_.last_citing_month / 12;
          do {
            p.id = PatentId::Parse(std::to_string(lo + rng_.Below(span)));
          } while (!used_.insert(p.id).second);
        } else {
          p.id = FreshNumber(years[i]);
        }
        p.grant_date = DateForNumber(p.id, years[i]);
        p.title = Title();
        citing_.push_back(std::move(p));
      }
    }
    std::sort(citing_.begin(), citing_.end(),
              [](auto const& a, auto const& b) { return a.grant_date < b.grant_date; });
  }

  void MakeCitedPool() {
    std::vector<int> years;
    std::vector<int> pairs;
    for (int y = spec_.first_cited_year; y <= spec_.last_cited_year; ++y) {
      double const noise = 1.0 + spec_.noise * (2.0 * rng_.Unit() - 1.0);
      int const b = int(std::lround(spec_.background_pairs(y) * noise));
      if (b <= 0) continue;
      years.push_back(y);
      pairs.push_back(b);
    }
    for (auto const& l : spec_.landmarks) {
      pool_.push_back({PatentId::Parse(l.number), l.grant_date, l.citations});
    }
    for (int k = 0; k < spec_.unknown_year_refs; ++k) {
      int const year = 1976 + int(rng_.Below(35));
      pool_.push_back({FreshNumber(year), std::nullopt, 1 + int(rng_.Below(2))});
    }

    int const background_patents =
        spec_.unique_cited - int(pool_.size());
    std::vector<double> weights(pairs.begin(), pairs.end());
    auto distinct = Apportion(weights, background_patents);
    // Each year needs 1 <= patents <= pairs; rebalance after clamping.
    for (std::size_t i = 0; i < distinct.size(); ++i) {
      distinct[i] = std::clamp(distinct[i], 1, pairs[i]);
    }
    int excess = std::accumulate(distinct.begin(), distinct.end(), 0) -
                 background_patents;
    for (std::size_t i = 0, idle = 0; excess != 0;
         i = (i + 1) % distinct.size()) {
      if (excess > 0 && distinct[i] > 1) {
        --distinct[i];
        --excess;
        idle = 0;
      } else if (excess < 0 && distinct[i] < pairs[i]) {
        ++distinct[i];
        ++excess;
        idle = 0;
      } else if (++idle > distinct.size()) {
        throw std::runtime_error("cannot reach the unique cited target");
      }
    }

    int reissues_left = spec_.reissue_refs;
    for (std::size_t i = 0; i < years.size(); ++i) {
      int const year = years[i];
      int const cap = spec_.year_caps.count(year) ? spec_.year_caps.at(year)
                                                  : spec_.default_cap;
      std::vector<int> degree(static_cast<std::size_t>(distinct[i]), 1);
      // Zipf-like preference spreads the remaining pairs unevenly.
      std::vector<double> cumulative;
      double acc = 0;
      for (std::size_t r = 0; r < degree.size(); ++r) {
        acc += 1.0 / std::pow(double(r + 1), 0.8);
        cumulative.push_back(acc);
      }
      for (int extra = pairs[i] - distinct[i]; extra > 0;) {
        auto const r = std::size_t(
            std::lower_bound(cumulative.begin(), cumulative.end(), rng_.Unit() * acc) -
            cumulative.begin());
        auto const slot = std::min(r, degree.size() - 1);
        if (degree[slot] >= cap) {
          // Saturated: hand the pair to the least-cited patent instead.
          auto it = std::min_element(degree.begin(), degree.end());
          if (*it >= cap) break;
          ++*it;
        } else {
          ++degree[slot];
        }
        --extra;
      }
      for (int d : degree) {
        CitedSlot slot;
        if (reissues_left > 0 && year >= 1980 && year <= 2012 && rng_.Below(40) == 0) {
          --reissues_left;
          // Reissue numbers run from about RE30000 (1979) to RE46000 (2016).
          auto const base = 30000 + (year - 1979) * 430;
          do {
            slot.id = PatentId::Parse("RE" + std::to_string(base + rng_.Below(430)));
          } while (!used_.insert(slot.id).second);
          slot.date = DateOf(year, rng_.Unit());
        } else {
          slot.id = FreshNumber(year);
          slot.date = DateForNumber(slot.id, year);
        }
        slot.indegree = d;
        pool_.push_back(std::move(slot));
      }
    }
  }

  void AssignCitations() {
    std::vector<std::size_t> order(citing_.size());
    for (auto const& slot : pool_) {
      // Only patents granted after the cited one can cite it.
      std::size_t first = 0;
      if (slot.date) {
        first = std::size_t(
            std::upper_bound(citing_.begin(), citing_.end(), *slot.date,
                             [](Date const& d, CitingPatent const& p) {
                               return d < p.grant_date;
                             }) -
            citing_.begin());
      }
      auto const eligible = citing_.size() - first;
      auto const k = std::min<std::size_t>(std::size_t(slot.indegree), eligible);
      if (k == 0) {
        throw std::runtime_error("no eligible citer for " + slot.id.str());
      }
      if (k < std::size_t(slot.indegree) && slot.indegree > 20) {
        throw std::runtime_error("not enough citers for landmark " + slot.id.str());
      }
      order.resize(eligible);
      std::iota(order.begin(), order.end(), first);
      for (std::size_t j = 0; j < k; ++j) {
        auto const pick = j + std::size_t(rng_.Below(std::int64_t(eligible - j)));
        std::swap(order[j], order[pick]);
        citing_[order[j]].cited.push_back(CitedReference{
            slot.id, slot.date ? std::optional<int>(slot.date->year) : std::nullopt});
      }
    }
    for (auto& p : citing_) {
      std::sort(p.cited.begin(), p.cited.end(),
                [](auto const& a, auto const& b) { return a.cited_id < b.cited_id; });
    }
  }

  FixtureSpec const& spec_;
  Rng rng_;
  std::set<PatentId> used_;
  std::vector<CitingPatent> citing_;
  std::vector<CitedSlot> pool_;
};

double Gaussian(int y, double center, double width) {
  double const z = (y - center) / width;
  return std::exp(-z * z);
}

FixtureSpec RnaiSpec() {
  FixtureSpec s;
  s.name = "rnai";
  s.query = R"(RNAi, "interference RNA", siRNA, "RNA interference")";
  s.seed = 20170228;
  s.citing_count = 1217;
  s.unique_cited = 4065;
  s.citing_year_weights = {{1998, 10}, {1999, 15}, {2000, 20}, {2001, 25},
                           {2002, 30}, {2003, 40}, {2004, 50}, {2005, 60},
                           {2006, 70}, {2007, 75}, {2008, 80}, {2009, 85},
                           {2010, 90}, {2011, 95}, {2012, 100}, {2013, 100},
                           {2014, 100}, {2015, 95}, {2016, 90}, {2017, 15}};
  s.last_citing_month = 2;
  s.first_cited_year = 1958;
  s.last_cited_year = 2016;
  s.background_pairs = [](int y) {
    double b = y < 1976 ? 6.0 * std::exp((y - 1976) / 6.0)
                        : 900.0 * Gaussian(y, 2007, 6.0) + 12.0;
    // A broad 2009 surge: many moderately cited patents, no single leader.
    if (y == 2009) b += 450.0;
    return b;
  };
  s.noise = 0.03;
  s.landmarks = {
      {"6506559", {2003, 1, 14}, 330},  // Fire et al.
      {"7056704", {2006, 6, 6}, 200},   // Tuschl et al.
      {"7595387", {2009, 9, 29}, 55},   // Leake et al.
  };
  s.unknown_year_refs = 24;
  s.reissue_refs = 8;
  s.default_cap = 40;
  s.year_caps = {{2009, 30}};
  s.title_templates = {
      "Compositions and methods for RNA interference of {}",
      "siRNA molecules targeting {}",
      "Double-stranded RNA agents for inhibiting {} expression by RNAi",
      "Modified siRNA for treating diseases associated with {}",
      "Lipid formulations for delivery of siRNA to {}",
      "Interference RNA constructs directed against {}",
      "RNAi-mediated inhibition of {} in mammalian cells",
      "Short hairpin RNA interference vectors for {}",
  };
  s.title_fillers = {"VEGF", "hepatitis B virus", "apolipoprotein B",
                     "PCSK9", "transthyretin", "KRAS", "BCL-2",
                     "HIV-1 replication", "TNF-alpha", "Huntingtin",
                     "influenza virus", "survivin", "c-Myc", "hepatocytes",
                     "tumor cells", "plant pathogens"};
  return s;
}

FixtureSpec CholesterolSpec() {
  FixtureSpec s;
  s.name = "cholesterol";
  s.query = "cholesterol";
  s.seed = 19870721;
  s.citing_count = 3412;
  s.unique_cited = 11326;
  for (int y = 1976; y <= 2016; ++y) {
    s.citing_year_weights[y] = 20.0 + 230.0 * Gaussian(y, 2014, 12.0);
  }
  s.citing_year_weights[2017] = 40;
  s.last_citing_month = 2;
  s.first_cited_year = 1934;
  s.last_cited_year = 2016;
  s.background_pairs = [](int y) {
    if (y < 1976) return 40.0 * std::exp((y - 1976) / 8.0);
    return 1100.0 * Gaussian(y, 2001, 11.0) + 40.0;
  };
  s.noise = 0.03;
  s.landmarks = {
      {"4681893", {1987, 7, 21}, 520},   // Roth, atorvastatin
      {"8030457", {2011, 10, 4}, 260},   // Jackson et al., evolocumab
      {"8563698", {2013, 10, 22}, 230},  // Jackson et al., evolocumab
  };
  s.unknown_year_refs = 60;
  s.reissue_refs = 20;
  s.default_cap = 40;
  s.title_templates = {
      "Method for lowering serum cholesterol with {}",
      "Enzymatic determination of cholesterol using {}",
      "Cholesterol-lowering composition comprising {}",
      "Inhibitors of cholesterol biosynthesis based on {}",
      "Treatment of hypercholesterolemia with {}",
      "Assay for HDL cholesterol employing {}",
      "Cholesterol absorption inhibitors derived from {}",
      "Antibodies that reduce LDL cholesterol by binding {}",
  };
  s.title_fillers = {"HMG-CoA reductase inhibitors", "plant sterols",
                     "cholesterol oxidase", "bile acid sequestrants",
                     "azetidinones", "PCSK9", "niacin", "fibrates",
                     "phytostanol esters", "CETP", "omega-3 fatty acids",
                     "cyclodextrins", "soluble fiber", "statins"};
  return s;
}

void Report(pcs::CacheEntry const& entry) {
  auto agg = pcs::Aggregate(entry.payload);
  std::cout << entry.query << ": citing " << agg.stats.citing_count
            << ", unique cited " << agg.stats.unique_cited_count << ", pairs "
            << agg.stats.citation_pairs << ", unknown year "
            << agg.stats.dropped_unknown_year << "\n";
  for (auto mode : {pcs::Mode::kPcs, pcs::Mode::kRpys}) {
    auto const spectrum = pcs::BuildSpectrum(agg.bins, mode);
    auto const l = pcs::SelectLandmark(spectrum, agg.stats.unique_cited_count, 5);
    std::cout << "  " << pcs::ModeName(mode) << ": " << l.patent.str() << " ("
              << l.year << ", " << l.score.ToDouble() << ")";
    for (auto const& p : l.runner_ups) {
      std::cout << "; " << p.year << ":" << p.patent.str() << "="
                << p.score.ToDouble();
    }
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate the bundled PCS fixtures"};
  std::string out_dir = PCS_DEFAULT_FIXTURE_DIR;
  app.add_option("--out", out_dir, "Directory to write <name>.pcs-cache into");
  CLI11_PARSE(app, argc, argv);

  try {
    std::filesystem::create_directories(out_dir);
    for (auto const& spec : {RnaiSpec(), CholesterolSpec()}) {
      auto const entry = Builder(spec).Build();
      auto const path =
          std::filesystem::path(out_dir) / (spec.name + ".pcs-cache");
      std::ofstream(path, std::ios::binary) << pcs::EncodeEntry(entry);
      std::cout << "wrote " << path.string() << "\n";
      Report(entry);
    }
  } catch (std::exception const& e) {
    std::cerr << "make_fixtures: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
