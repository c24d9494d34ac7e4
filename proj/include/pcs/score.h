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

#ifndef PCS_SCORE_H_
#define PCS_SCORE_H_

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace pcs {

/// An exact rational spectrum value. Detrended counts are integers or
/// half-integers and normalization multiplies by top_count / c_total, so
/// every score is a ratio of modest integers. Keeping them exact makes peak
/// selection and tie-breaking independent of floating-point rounding.
class Score {
 public:
  constexpr Score() = default;
  constexpr Score(std::int64_t value) : num_(value) {}  // NOLINT: implicit

  /// num / den, reduced. den must be non-zero.
  static Score Ratio(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("Score::Ratio: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    auto const g = std::gcd(num, den);
    Score s;
    s.num_ = num / g;
    s.den_ = den / g;
    return s;
  }

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }
  double ToDouble() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  Score operator-() const { return Ratio(-num_, den_); }

  friend Score operator*(Score const& a, Score const& b) {
    // Cross-reduce first to keep the intermediate products small.
    auto const g1 = std::gcd(a.num_, b.den_);
    auto const g2 = std::gcd(b.num_, a.den_);
    return Ratio((a.num_ / (g1 ? g1 : 1)) * (b.num_ / (g2 ? g2 : 1)),
                 (a.den_ / (g2 ? g2 : 1)) * (b.den_ / (g1 ? g1 : 1)));
  }
  friend Score operator-(Score const& a, Score const& b) {
    auto const g = std::gcd(a.den_, b.den_);
    return Ratio(a.num_ * (b.den_ / g) - b.num_ * (a.den_ / g),
                 a.den_ / g * b.den_);
  }
  friend Score operator+(Score const& a, Score const& b) { return a - (-b); }

  friend bool operator==(Score const& a, Score const& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(Score const& a, Score const& b) {
    auto const lhs = static_cast<__int128>(a.num_) * b.den_;
    auto const rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }

  friend std::ostream& operator<<(std::ostream& os, Score const& s) {
    os << s.num_;
    if (s.den_ != 1) os << '/' << s.den_;
    return os;
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace pcs

#endif  // PCS_SCORE_H_
