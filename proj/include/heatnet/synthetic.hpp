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

#ifndef HEATNET_SYNTHETIC_HPP_
#define HEATNET_SYNTHETIC_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "heatnet/costs.hpp"
#include "heatnet/ingest.hpp"
#include "heatnet/scenario.hpp"
#include "heatnet/types.hpp"

namespace heatnet {

// Knobs for a grid-shaped synthetic city. Per-group defaults (homes per
// block, usage relative to the low-income group) come from published
// measurements of a small New England city.
struct SyntheticCityParams {
  int blocks_x = 13;
  int blocks_y = 13;
  double block_length = 100.0;  // meters
  double length_jitter = 0.15;  // roads run up to this fraction longer
  // Indexed by IncomeGroup.
  std::array<double, 3> households_per_block{13.21, 10.89, 9.66};
  std::array<double, 3> usage_scale{1.0, 1.2729, 1.4699};
  double low_median_usage = 650.0;  // CCF/year
  double usage_dispersion = 0.35;   // log-normal sigma; 0 gives no spread
  int tract_divisions = 3;          // tracts per side
  // Radial: income rises with distance from the gate station, so the
  // periphery is wealthier and sparser. Otherwise tracts are shuffled.
  bool radial_tracts = true;
  // Homes per pole-top unit, by group: dense tracts share more.
  std::array<int, 3> min_households_per_transformer{4, 3, 2};
  std::array<int, 3> max_households_per_transformer{8, 6, 4};
  std::vector<double> transformer_sizes{15.0, 25.0, 37.5, 50.0, 75.0};
  double min_household_kva = 1.5;  // baseline electric peak per home
  double max_household_kva = 3.5;
  double min_utilization = 0.55;  // baseline peak / capacity
  double max_utilization = 0.95;
  double setback_min = 6.0;  // meters from the road centerline
  double setback_max = 20.0;
  std::array<double, 3> setback_scale{1.0, 1.3, 1.6};  // larger lots further out
  double annual_maintenance_spend = 1.5e6;
  std::uint64_t seed = 42;

  std::vector<std::string> violations() const {
    std::vector<std::string> out;
    if (blocks_x < 2 || blocks_y < 2) out.push_back("grid dimensions must be >= 2");
    if (!(block_length > 0.0)) out.push_back("block_length must be positive");
    if (!(length_jitter >= 0.0)) out.push_back("length_jitter must be >= 0");
    for (double v : households_per_block)
      if (!(v >= 0.0)) out.push_back("households_per_block entries must be >= 0");
    for (double v : usage_scale)
      if (!(v > 0.0)) out.push_back("usage_scale entries must be positive");
    if (!(low_median_usage > 0.0)) out.push_back("low_median_usage must be positive");
    if (!(usage_dispersion >= 0.0)) out.push_back("usage_dispersion must be >= 0");
    if (tract_divisions < 1) out.push_back("tract_divisions must be >= 1");
    for (std::size_t g = 0; g < 3; ++g)
      if (min_households_per_transformer[g] < 1 ||
          max_households_per_transformer[g] < min_households_per_transformer[g])
        out.push_back("households per transformer range is invalid");
    if (transformer_sizes.empty() ||
        !std::is_sorted(transformer_sizes.begin(), transformer_sizes.end()) ||
        transformer_sizes.front() <= 0.0)
      out.push_back("transformer_sizes must be positive and ascending");
    if (!(min_household_kva >= 0.0) || max_household_kva < min_household_kva)
      out.push_back("household kVA range is invalid");
    if (!(min_utilization > 0.0) || max_utilization < min_utilization ||
        max_utilization > CostBook::kOverloadRatio)
      out.push_back("utilization range must lie in (0, 1.25]");
    if (!(setback_min >= 0.0) || setback_max < setback_min)
      out.push_back("setback range is invalid");
    for (double v : setback_scale)
      if (!(v >= 0.0)) out.push_back("setback_scale entries must be >= 0");
    if (!(annual_maintenance_spend >= 0.0))
      out.push_back("annual_maintenance_spend must be >= 0");
    return out;
  }
};

// Deterministic in (params, seed): a jittered street grid pruned from its
// corner gate station, homes along every street clustered into contiguous
// income tracts, log-normal annual usage, and small pole-top transformers
// whose baseline peaks stay within rating.
inline Scenario generate_synthetic_city(const SyntheticCityParams& params) {
  auto problems = params.violations();
  if (!problems.empty()) throw ValidationError(std::move(problems));

  std::mt19937_64 rng(params.seed);
  auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };

  const int nx = params.blocks_x + 1;
  const int ny = params.blocks_y + 1;
  auto node_id = [&](int i, int j) { return NodeId(static_cast<std::int64_t>(j) * nx + i); };

  RoadGraph road;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      road.nodes.push_back({node_id(i, j), {i * params.block_length, j * params.block_length}});
  std::int64_t segment_id = 0;
  auto add_segment = [&](NodeId a, NodeId b) {
    double len = std::round(params.block_length * (1.0 + uniform(0.0, params.length_jitter)));
    road.segments.push_back({segment_id++, a, b, std::max(1.0, len), "residential"});
  };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i + 1 < nx; ++i) add_segment(node_id(i, j), node_id(i + 1, j));
  for (int j = 0; j + 1 < ny; ++j)
    for (int i = 0; i < nx; ++i) add_segment(node_id(i, j), node_id(i, j + 1));

  GasNetwork network = prune_to_shortest_paths(road, node_id(0, 0));

  // Income tracts: a balanced assignment of groups to tract cells, either
  // by distance from the gate station or shuffled.
  const int td = params.tract_divisions;
  std::vector<IncomeGroup> tracts(static_cast<std::size_t>(td * td));
  std::vector<int> cells(tracts.size());
  std::iota(cells.begin(), cells.end(), 0);
  if (params.radial_tracts) {
    std::stable_sort(cells.begin(), cells.end(), [&](int a, int b) {
      return std::hypot(a % td + 0.5, a / td + 0.5) < std::hypot(b % td + 0.5, b / td + 0.5);
    });
  } else {
    std::shuffle(cells.begin(), cells.end(), rng);
  }
  for (std::size_t r = 0; r < cells.size(); ++r)
    tracts[static_cast<std::size_t>(cells[r])] = kIncomeGroups[std::min<std::size_t>(2, 3 * r / cells.size())];
  const double width = params.blocks_x * params.block_length;
  const double height = params.blocks_y * params.block_length;
  auto tract_of = [&](Point p) {
    int tx = std::clamp(static_cast<int>(p.x / width * td), 0, td - 1);
    int ty = std::clamp(static_cast<int>(p.y / height * td), 0, td - 1);
    return tracts[ty * td + tx];
  };

  std::map<NodeId, Point> where;
  for (const auto& n : road.nodes) where.emplace(n.id, n.location);

  std::vector<Household> households;
  std::vector<Transformer> transformers;
  std::normal_distribution<double> normal(0.0, 1.0);
  for (const auto& s : road.segments) {
    const Point a = where.at(s.a);
    const Point b = where.at(s.b);
    const Point mid{(a.x + b.x) / 2, (a.y + b.y) / 2};
    const IncomeGroup group = tract_of(mid);
    // A city block is bounded by four streets, each shared with a neighbor.
    const double mean = params.households_per_block[index_of(group)] / 2.0;
    const int count = mean > 0.0 ? std::poisson_distribution<int>(mean)(rng) : 0;

    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len = std::hypot(dx, dy);
    std::vector<std::pair<double, Household>> on_segment;
    for (int k = 0; k < count; ++k) {
      const double t = uniform(0.08, 0.92);
      const double side = uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0;
      const double setback = params.setback_scale[index_of(group)] *
                             uniform(params.setback_min, params.setback_max);
      Household h;
      h.location = {a.x + t * dx - side * setback * dy / len,
                    a.y + t * dy + side * setback * dx / len};
      h.income_group = group;
      const double z = normal(rng);
      h.annual_gas = params.low_median_usage * params.usage_scale[index_of(group)] *
                     std::exp(params.usage_dispersion * z);
      on_segment.emplace_back(t, std::move(h));
    }
    std::sort(on_segment.begin(), on_segment.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    std::size_t pos = 0;
    while (pos < on_segment.size()) {
      const std::size_t left = on_segment.size() - pos;
      const int lo = params.min_households_per_transformer[index_of(group)];
      const int hi = params.max_households_per_transformer[index_of(group)];
      std::size_t take = std::uniform_int_distribution<int>(lo, hi)(rng);
      take = std::min(take, left);
      if (left - take > 0 && left - take < static_cast<std::size_t>(lo))
        take = left;  // fold a too-small tail into this transformer
      Transformer tr;
      tr.id = TransformerId(static_cast<std::int64_t>(transformers.size()));
      double baseline_peak = 0.0;
      for (std::size_t k = pos; k < pos + take; ++k) {
        Household& h = on_segment[k].second;
        h.id = HouseholdId(static_cast<std::int64_t>(households.size()));
        h.transformer = tr.id;
        h.hourly_gas = LoadSeries(winter_peaked_profile(), h.annual_gas);
        tr.served_households.push_back(h.id);
        baseline_peak += uniform(params.min_household_kva, params.max_household_kva);
        households.push_back(h);
      }
      const double needed = baseline_peak / uniform(params.min_utilization, params.max_utilization);
      auto size = std::lower_bound(params.transformer_sizes.begin(),
                                   params.transformer_sizes.end(), needed);
      if (size == params.transformer_sizes.end()) {
        tr.capacity_kva = params.transformer_sizes.back();
        baseline_peak = std::min(baseline_peak, params.max_utilization * tr.capacity_kva);
      } else {
        tr.capacity_kva = *size;
      }
      tr.baseline_load = LoadSeries(residential_baseline_profile(), baseline_peak);
      transformers.push_back(std::move(tr));
      pos += take;
    }
  }

  if (!households.empty()) network = assign_meters(network, households);

  std::vector<double> usage;
  for (const auto& h : households) usage.push_back(h.annual_gas);
  CostBook book;
  book.constants.median_annual_gas = median_annual_gas(usage);
  book.constants.maintenance_rate =
      maintenance_rate_for(network, params.annual_maintenance_spend);
  network = derive_maintenance(network, book.constants);

  ScenarioParts parts;
  parts.source = network.source();
  for (const auto& [id, n] : network.nodes()) parts.nodes.push_back(n);
  for (const auto& [k, e] : network.edges()) parts.edges.push_back(e);
  parts.households = std::move(households);
  parts.transformers = std::move(transformers);
  parts.costs = book;
  parts.provenance = "synthetic seed=" + std::to_string(params.seed);
  return Scenario(std::move(parts));
}

}  // namespace heatnet

#endif  // HEATNET_SYNTHETIC_HPP_
