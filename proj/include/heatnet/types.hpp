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

#ifndef HEATNET_TYPES_HPP_
#define HEATNET_TYPES_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace heatnet {

// Strongly typed integer identifiers. Keys are opaque and stable so that
// plans serialize deterministically.
template <typename Tag>
struct Id {
  std::int64_t value = 0;

  constexpr Id() = default;
  constexpr explicit Id(std::int64_t v) : value(v) {}

  friend constexpr auto operator<=>(const Id&, const Id&) = default;
};

using NodeId = Id<struct NodeTag>;
using HouseholdId = Id<struct HouseholdTag>;
using TransformerId = Id<struct TransformerTag>;

// A pipe is identified by its endpoints plus a parallel index, since road
// data can contain several segments between the same pair of junctions.
struct EdgeKey {
  NodeId tail;
  NodeId head;
  int parallel = 0;

  friend constexpr auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

inline std::string to_string(const EdgeKey& key) {
  return "(" + std::to_string(key.tail.value) + "," +
         std::to_string(key.head.value) + "," + std::to_string(key.parallel) +
         ")";
}

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(const Point&, const Point&) = default;
};

enum class IncomeGroup : int { kLow = 0, kMedium = 1, kHigh = 2 };

inline constexpr std::array<IncomeGroup, 3> kIncomeGroups = {
    IncomeGroup::kLow, IncomeGroup::kMedium, IncomeGroup::kHigh};

inline constexpr std::size_t index_of(IncomeGroup g) {
  return static_cast<std::size_t>(g);
}

inline std::string_view to_string(IncomeGroup g) {
  switch (g) {
    case IncomeGroup::kLow:
      return "low";
    case IncomeGroup::kMedium:
      return "medium";
    case IncomeGroup::kHigh:
      return "high";
  }
  return "unknown";
}

inline std::optional<IncomeGroup> parse_income_group(std::string_view s) {
  if (s == "low") return IncomeGroup::kLow;
  if (s == "medium" || s == "med") return IncomeGroup::kMedium;
  if (s == "high") return IncomeGroup::kHigh;
  return std::nullopt;
}

// Error hierarchy. Every error thrown by the library derives from Error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A key (node, edge, household, transformer) that does not resolve.
class InvalidReference : public Error {
 public:
  using Error::Error;
};

// A malformed input file; the message names the offending line or field.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Structural invariant violations; carries one entry per offender.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "validation failed";
    for (const auto& s : v) out += "\n  - " + s;
    return out;
  }

  std::vector<std::string> violations_;
};

// Bad configuration values (constants, budgets, allocation vectors).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace heatnet

template <typename Tag>
struct std::hash<heatnet::Id<Tag>> {
  std::size_t operator()(const heatnet::Id<Tag>& id) const noexcept {
    return std::hash<std::int64_t>{}(id.value);
  }
};

#endif  // HEATNET_TYPES_HPP_
