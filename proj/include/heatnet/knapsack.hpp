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

#ifndef HEATNET_KNAPSACK_HPP_
#define HEATNET_KNAPSACK_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "heatnet/types.hpp"

namespace heatnet {

struct KnapsackSolution {
  std::vector<std::size_t> items;  // ascending
  double value = 0.0;
};

// 0/1 knapsack by dynamic programming over integer capacities: one value
// row updated per item with capacities visited in descending order, plus a
// take/skip table for recovering the chosen set. O(n * capacity) time.
// Ties keep the earlier items.
inline KnapsackSolution knapsack_dp(std::span<const double> values,
                                    std::span<const std::int64_t> weights,
                                    std::int64_t capacity) {
  if (values.size() != weights.size())
    throw ConfigError("knapsack: " + std::to_string(values.size()) + " values but " +
                      std::to_string(weights.size()) + " weights");
  if (capacity < 0) throw ConfigError("knapsack: negative capacity");
  for (std::int64_t w : weights)
    if (w < 0) throw ConfigError("knapsack: negative weight");

  const std::size_t n = values.size();
  const std::size_t width = static_cast<std::size_t>(capacity) + 1;
  std::vector<double> best(width, 0.0);
  std::vector<bool> take(n * width, false);

  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t w = weights[i];
    if (w > capacity) continue;
    for (std::int64_t j = capacity; j >= w; --j) {
      const double with = best[static_cast<std::size_t>(j - w)] + values[i];
      if (with > best[static_cast<std::size_t>(j)]) {
        best[static_cast<std::size_t>(j)] = with;
        take[i * width + static_cast<std::size_t>(j)] = true;
      }
    }
  }

  KnapsackSolution out;
  out.value = best[static_cast<std::size_t>(capacity)];
  std::int64_t j = capacity;
  for (std::size_t i = n; i-- > 0;) {
    if (take[i * width + static_cast<std::size_t>(j)]) {
      out.items.push_back(i);
      j -= weights[i];
    }
  }
  std::reverse(out.items.begin(), out.items.end());
  return out;
}

}  // namespace heatnet

#endif  // HEATNET_KNAPSACK_HPP_
