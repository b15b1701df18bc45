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

#ifndef HEATNET_BASELINE_HPP_
#define HEATNET_BASELINE_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "heatnet/costs.hpp"
#include "heatnet/load_series.hpp"
#include "heatnet/neighborhoods.hpp"
#include "heatnet/network.hpp"
#include "heatnet/scenario.hpp"

namespace heatnet {

// Outcome of converting households one by one with no regard for the pipes.
struct ObliviousResult {
  std::set<HouseholdId> converted;
  std::map<TransformerId, UpgradeAction> upgraded;
  std::set<EdgeKey> decommissioned;
  double installs = 0.0;
  double upgrades = 0.0;
  double carbon = 0.0;
  double shutdown_length = 0.0;  // mains plus services, metres

  double spend() const { return installs + upgrades; }
};

// Greedy by household emissions (ties to smaller id). A household is
// converted if its install plus any transformer upgrade it newly triggers
// still fits in the budget; otherwise it is skipped. Pipes come out only
// afterwards, wherever every household a neighborhood serves happens to be
// converted, and no maintenance savings are credited.
inline ObliviousResult solve_oblivious(const Scenario& scenario, double budget) {
  const PhysicalConstants& k = scenario.constants();
  std::vector<const Household*> order;
  for (const auto& [id, h] : scenario.households())
    if (!h.converted) order.push_back(&h);
  std::stable_sort(order.begin(), order.end(), [&](const Household* a, const Household* b) {
    return carbon_emissions(a->annual_gas, k) > carbon_emissions(b->annual_gas, k);
  });

  ObliviousResult r;
  std::map<TransformerId, LoadSeries> loads;
  for (const auto& [id, t] : scenario.transformers()) loads.emplace(id, t.baseline_load);
  for (const Household* h : order) {
    const Transformer& t = scenario.transformer(h->transformer);
    LoadSeries after = loads.at(t.id);
    after.add(ashp_electric_adder(h->hourly_gas, k));
    double upgrade = 0.0;
    std::optional<UpgradeAction> action;
    if (!r.upgraded.contains(t.id) && !is_overloaded(t.capacity_kva, loads.at(t.id).peak()) &&
        is_overloaded(t.capacity_kva, after.peak())) {
      action = upgrade_action(t.capacity_kva, after.peak(), scenario.costs());
      upgrade = action->cost;
    }
    const double install = ashp_install_cost(h->annual_gas, k);
    if (r.spend() + install + upgrade > budget) continue;
    r.installs += install;
    r.upgrades += upgrade;
    r.carbon += carbon_emissions(h->annual_gas, k);
    r.converted.insert(h->id);
    loads.at(t.id) = std::move(after);
    if (action) r.upgraded.emplace(t.id, *action);
  }

  // Remove every neighborhood left with no gas customers, to a fixpoint.
  GasNetwork live = scenario.network();
  auto all_off_gas = [&](const Neighborhood& n) {
    for (const EdgeKey& e : n.edges)
      for (HouseholdId h : live.edge(e).households)
        if (!scenario.household(h).converted && !r.converted.contains(h)) return false;
    return true;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Neighborhood& n : enumerate_neighborhoods(live)) {
      if (!all_off_gas(n)) continue;
      for (const EdgeKey& e : n.edges) {
        r.shutdown_length += live.edge(e).pipe_length();
        r.decommissioned.insert(e);
      }
      live = live.without_edges(n.edges);
      changed = true;
      break;
    }
  }
  return r;
}

}  // namespace heatnet

#endif  // HEATNET_BASELINE_HPP_
