// Copyright 2026 The heatnet Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HEATNET_LOAD_SERIES_HPP_
#define HEATNET_LOAD_SERIES_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "heatnet/types.hpp"

namespace heatnet {

inline constexpr std::size_t kHoursPerYear = 8760;

// A fixed 8760-slot hourly shape. Named profiles ("winter_peaked",
// "residential_baseline") are shared singletons and serialize by name;
// explicit profiles carry a unique key and serialize their values.
class Profile {
 public:
  Profile(std::string key, std::vector<double> values, bool named)
      : key_(std::move(key)), values_(std::move(values)), named_(named) {
    if (values_.size() != kHoursPerYear) {
      throw ParseError("hourly series '" + key_ + "' has " +
                       std::to_string(values_.size()) + " slots, expected " +
                       std::to_string(kHoursPerYear));
    }
  }

  const std::string& key() const { return key_; }
  std::span<const double> values() const { return values_; }
  bool named() const { return named_; }

  double sum() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s;
  }

  friend bool operator==(const Profile& a, const Profile& b) {
    return a.key_ == b.key_ && a.values_ == b.values_;
  }

 private:
  std::string key_;
  std::vector<double> values_;
  bool named_;
};

using ProfilePtr = std::shared_ptr<const Profile>;

namespace detail {

inline double day_of_year(std::size_t hour) {
  return static_cast<double>(hour / 24);
}

inline double hour_of_day(std::size_t hour) {
  return static_cast<double>(hour % 24);
}

inline double seasonal_cosine(double day, double peak_day) {
  return std::cos(2.0 * std::numbers::pi * (day - peak_day) / 365.0);
}

}  // namespace detail

// Space-heating gas shape: peaks mid-January and on winter mornings and
// evenings, with a small year-round floor for water heating. Sums to 1.
inline ProfilePtr winter_peaked_profile() {
  static const ProfilePtr profile = [] {
    std::vector<double> v(kHoursPerYear);
    double total = 0.0;
    for (std::size_t t = 0; t < kHoursPerYear; ++t) {
      const double c =
          std::max(0.0, detail::seasonal_cosine(detail::day_of_year(t), 15.0));
      const double seasonal = 0.12 + c * c;
      const double h = detail::hour_of_day(t);
      const double diurnal = 1.0 + 0.45 * std::exp(-(h - 7.0) * (h - 7.0) / 4.5) +
                             0.35 * std::exp(-(h - 19.0) * (h - 19.0) / 8.0);
      v[t] = seasonal * diurnal;
      total += v[t];
    }
    for (double& x : v) x /= total;
    return std::make_shared<const Profile>("winter_peaked", std::move(v), true);
  }();
  return profile;
}

// Residential electric baseline: summer cooling peak, evening diurnal peak.
// Normalized to a maximum of 1 so the scale is the peak in kVA.
inline ProfilePtr residential_baseline_profile() {
  static const ProfilePtr profile = [] {
    std::vector<double> v(kHoursPerYear);
    double peak = 0.0;
    for (std::size_t t = 0; t < kHoursPerYear; ++t) {
      const double d = detail::day_of_year(t);
      const double summer =
          std::max(0.0, detail::seasonal_cosine(d, 200.0));
      const double winter = std::max(0.0, detail::seasonal_cosine(d, 15.0));
      const double seasonal = 0.72 + 0.28 * summer * summer + 0.08 * winter;
      const double h = detail::hour_of_day(t);
      const double diurnal = 0.45 + 0.55 * std::exp(-(h - 19.0) * (h - 19.0) / 6.0) +
                             0.15 * std::exp(-(h - 8.0) * (h - 8.0) / 3.0);
      v[t] = seasonal * diurnal;
      peak = std::max(peak, v[t]);
    }
    for (double& x : v) x /= peak;
    return std::make_shared<const Profile>("residential_baseline",
                                           std::move(v), true);
  }();
  return profile;
}

inline ProfilePtr named_profile(const std::string& name) {
  if (name == "winter_peaked") return winter_peaked_profile();
  if (name == "residential_baseline") return residential_baseline_profile();
  return nullptr;
}

// An hourly series expressed as a weighted sum of profiles. Adding series
// merges terms on the same profile, so the sum of many households that share
// a shape stays a single term and peak queries stay O(slots).
class LoadSeries {
 public:
  struct Term {
    ProfilePtr profile;
    double scale = 0.0;
  };

  LoadSeries() = default;
  LoadSeries(ProfilePtr profile, double scale) {
    terms_.push_back({std::move(profile), scale});
  }

  static LoadSeries explicit_series(std::string key, std::vector<double> v) {
    return LoadSeries(
        std::make_shared<const Profile>(std::move(key), std::move(v), false),
        1.0);
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  // this += factor * other. Terms stay sorted by profile key so that the
  // summation order (and therefore every floating-point result) is stable.
  LoadSeries& add(const LoadSeries& other, double factor = 1.0) {
    for (const Term& t : other.terms_) {
      auto it = std::lower_bound(
          terms_.begin(), terms_.end(), t.profile->key(),
          [](const Term& a, const std::string& k) { return a.profile->key() < k; });
      if (it != terms_.end() && it->profile->key() == t.profile->key()) {
        it->scale += factor * t.scale;
      } else {
        terms_.insert(it, Term{t.profile, factor * t.scale});
      }
    }
    return *this;
  }

  double at(std::size_t slot) const {
    double v = 0.0;
    for (const Term& t : terms_) v += t.scale * t.profile->values()[slot];
    return v;
  }

  double peak() const {
    if (terms_.empty()) return 0.0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < kHoursPerYear; ++s) best = std::max(best, at(s));
    return best;
  }

  double total() const {
    double v = 0.0;
    for (const Term& t : terms_) v += t.scale * t.profile->sum();
    return v;
  }

  std::vector<double> materialize() const {
    std::vector<double> out(kHoursPerYear, 0.0);
    for (std::size_t s = 0; s < kHoursPerYear; ++s) out[s] = at(s);
    return out;
  }

  friend bool operator==(const LoadSeries& a, const LoadSeries& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].scale != b.terms_[i].scale) return false;
      if (!(*a.terms_[i].profile == *b.terms_[i].profile)) return false;
    }
    return true;
  }

 private:
  std::vector<Term> terms_;
};

// Memoizes peak() by term composition. Within one planning run the same
// transformer is queried with identical additions many times over.
class PeakCache {
 public:
  double peak(const LoadSeries& series) {
    Key key;
    key.reserve(series.terms().size());
    for (const auto& t : series.terms()) key.emplace_back(t.profile.get(), t.scale);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const double p = series.peak();
    cache_.emplace(std::move(key), p);
    return p;
  }

 private:
  using Key = std::vector<std::pair<const Profile*, double>>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::size_t h = 1469598103934665603ull;
      for (const auto& [p, s] : k) {
        h ^= std::hash<const void*>{}(p) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= std::hash<double>{}(s) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      }
      return h;
    }
  };
  std::unordered_map<Key, double, KeyHash> cache_;
};

}  // namespace heatnet

#endif  // HEATNET_LOAD_SERIES_HPP_
