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

#ifndef HEATNET_NEIGHBORHOODS_HPP_
#define HEATNET_NEIGHBORHOODS_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "heatnet/costs.hpp"
#include "heatnet/load_series.hpp"
#include "heatnet/network.hpp"
#include "heatnet/scenario.hpp"
#include "heatnet/types.hpp"

namespace heatnet {

// The edges that shut down together when `pseudo_index` is decommissioned:
// the edge itself plus everything it alone connects to the source.
struct Neighborhood {
  EdgeKey pseudo_index;
  std::vector<EdgeKey> edges;  // sorted; contains pseudo_index

  friend bool operator==(const Neighborhood&, const Neighborhood&) = default;
};

// Thrown when a neighborhood no longer matches the live network. Carries
// the current neighborhood of the same pseudo-index, if that edge is live.
class StaleNeighborhood : public Error {
 public:
  StaleNeighborhood(const EdgeKey& pseudo_index, std::optional<Neighborhood> current)
      : Error("neighborhood of " + to_string(pseudo_index) + " is stale"),
        current_(std::move(current)) {}

  const std::optional<Neighborhood>& current() const { return current_; }

 private:
  std::optional<Neighborhood> current_;
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// Spend ledger: each component is tracked separately and the total is
// always derived from them.
struct SpendLedger {
  double installs = 0.0;
  double upgrades = 0.0;
  double savings = 0.0;
  std::array<double, 3> group_spend{};  // indexed by IncomeGroup

  double total() const { return installs + upgrades - savings; }

  friend bool operator==(const SpendLedger&, const SpendLedger&) = default;
};

// Cost and carbon of converting one neighborhood against a given state.
// Used both as the pre-conversion estimate and as the realized outcome.
struct Assessment {
  double installs = 0.0;
  double upgrades = 0.0;
  double savings = 0.0;
  double carbon = 0.0;  // tCO2/year avoided
  IncomeGroup group = IncomeGroup::kLow;
  std::vector<HouseholdId> households;
  std::vector<std::pair<TransformerId, UpgradeAction>> upgrade_actions;
  // Heat-pump load added to each affected transformer.
  std::map<TransformerId, LoadSeries> load_additions;

  double cost() const { return installs + upgrades - savings; }
};

using RealizedOutcome = Assessment;

// Immutable snapshot of a transition in progress.
class TransitionState {
 public:
  static TransitionState initial(std::shared_ptr<const Scenario> scenario) {
    return TransitionState(std::move(scenario));
  }

  const Scenario& scenario() const { return *scenario_; }
  const std::shared_ptr<const Scenario>& scenario_ptr() const { return scenario_; }
  const GasNetwork& live_network() const { return live_; }
  const std::set<HouseholdId>& converted_households() const { return converted_; }
  const std::set<EdgeKey>& decommissioned_edges() const { return decommissioned_; }
  const std::map<TransformerId, UpgradeAction>& upgraded_transformers() const {
    return upgraded_;
  }
  const SpendLedger& ledger() const { return ledger_; }

  // Current hourly load: baseline plus adders of converted households.
  const LoadSeries& load(TransformerId id) const {
    auto it = loads_.find(id);
    return it != loads_.end() ? it->second : scenario_->transformer(id).baseline_load;
  }

 private:
  explicit TransitionState(std::shared_ptr<const Scenario> scenario)
      : scenario_(std::move(scenario)), live_(scenario_->network()) {}

  friend std::pair<TransitionState, RealizedOutcome> apply_shutdown(
      const TransitionState&, const Neighborhood&, const CostBook&, PeakCache*);

  std::shared_ptr<const Scenario> scenario_;
  GasNetwork live_;
  std::set<HouseholdId> converted_;
  std::set<EdgeKey> decommissioned_;
  std::map<TransformerId, UpgradeAction> upgraded_;
  std::map<TransformerId, LoadSeries> loads_;
  SpendLedger ledger_;
};

namespace detail {

inline Neighborhood make_neighborhood(const GasNetwork& network, const EdgeKey& pseudo_index,
                                      const std::vector<NodeId>& cut) {
  std::set<EdgeKey> edges{pseudo_index};
  for (NodeId n : cut)
    for (const EdgeKey& k : network.incident(n)) edges.insert(k);
  return {pseudo_index, std::vector<EdgeKey>(edges.begin(), edges.end())};
}

}  // namespace detail

// The neighborhood a single edge indexes in `network`.
inline Neighborhood neighborhood_of(const GasNetwork& network, const EdgeKey& pseudo_index) {
  auto cut = downstream_component(network, pseudo_index);
  return detail::make_neighborhood(network, pseudo_index,
                                   std::vector<NodeId>(cut.begin(), cut.end()));
}

// One neighborhood per live edge, in pseudo-index order. Nothing is deleted;
// bridges and their downstream sides come from one lowpoint search.
inline std::vector<Neighborhood> enumerate_neighborhoods(const GasNetwork& network) {
  std::vector<Neighborhood> out;
  for (const auto& [edge, cut] : all_downstream_components(network))
    out.push_back(detail::make_neighborhood(network, edge, cut));
  return out;
}

inline std::vector<Neighborhood> enumerate_neighborhoods(const TransitionState& state) {
  return enumerate_neighborhoods(state.live_network());
}

// Gas-heated households on the neighborhood's edges, sorted by id.
inline std::vector<HouseholdId> members(const TransitionState& state, const Neighborhood& n) {
  std::vector<HouseholdId> out;
  for (const EdgeKey& k : n.edges) {
    for (HouseholdId h : state.live_network().edge(k).households) {
      if (!state.scenario().household(h).converted) out.push_back(h);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Plurality income group of the members; ties and empty neighborhoods go to
// the lower-income group.
inline IncomeGroup group_of(const Scenario& scenario, const std::vector<HouseholdId>& hh) {
  std::array<int, 3> count{};
  for (HouseholdId h : hh) ++count[index_of(scenario.household(h).income_group)];
  IncomeGroup best = IncomeGroup::kLow;
  for (IncomeGroup g : kIncomeGroups)
    if (count[index_of(g)] > count[index_of(best)]) best = g;
  return best;
}

inline void check_current(const TransitionState& state, const Neighborhood& n) {
  const GasNetwork& live = state.live_network();
  if (!live.has_edge(n.pseudo_index)) throw StaleNeighborhood(n.pseudo_index, std::nullopt);
  Neighborhood current = neighborhood_of(live, n.pseudo_index);
  if (current.edges != n.edges) throw StaleNeighborhood(n.pseudo_index, std::move(current));
}

// Cost (installs + newly triggered upgrades - one year of maintenance
// savings) and carbon of converting `n` now. `n` must be current.
inline Assessment assess_current(const TransitionState& state, const Neighborhood& n,
                                 const CostBook& book, PeakCache& cache) {
  const Scenario& scenario = state.scenario();
  const PhysicalConstants& k = book.constants;
  Assessment a;

  std::vector<const PipeEdge*> edges;
  for (const EdgeKey& key : n.edges) edges.push_back(&state.live_network().edge(key));
  a.savings = maintenance_savings(std::span<const PipeEdge* const>(edges), k);

  a.households = members(state, n);
  a.group = group_of(scenario, a.households);
  auto& added = a.load_additions;
  for (HouseholdId id : a.households) {
    if (state.converted_households().contains(id))
      throw InvariantViolation("household " + std::to_string(id.value) +
                               " is already converted but still on a live edge");
    const Household& h = scenario.household(id);
    a.installs += ashp_install_cost(h.annual_gas, k);
    a.carbon += carbon_emissions(h.annual_gas, k);
    added[h.transformer].add(ashp_electric_adder(h.hourly_gas, k));
  }
  for (const auto& [tid, extra] : added) {
    const Transformer& t = scenario.transformer(tid);
    const LoadSeries& now = state.load(tid);
    LoadSeries after = now;
    after.add(extra);
    const double pre = cache.peak(now);
    const double post = cache.peak(after);
    if (is_overloaded(t.capacity_kva, pre) || !is_overloaded(t.capacity_kva, post)) continue;
    UpgradeAction action = upgrade_action(t.capacity_kva, post, book);
    a.upgrades += action.cost;
    a.upgrade_actions.emplace_back(tid, std::move(action));
  }
  return a;
}

inline Assessment assess(const TransitionState& state, const Neighborhood& n,
                         const CostBook& book, PeakCache* cache = nullptr) {
  check_current(state, n);
  PeakCache local;
  return assess_current(state, n, book, cache ? *cache : local);
}

inline double neighborhood_cost(const Neighborhood& n, const TransitionState& state,
                                const CostBook& book) {
  return assess(state, n, book).cost();
}

inline double neighborhood_carbon(const Neighborhood& n, const TransitionState& state,
                                  const PhysicalConstants& k) {
  double carbon = 0.0;
  for (HouseholdId id : members(state, n)) {
    if (state.converted_households().contains(id)) continue;
    carbon += carbon_emissions(state.scenario().household(id).annual_gas, k);
  }
  return carbon;
}

// Carbon per unit cost. Free or paying neighborhoods rank above everything.
inline double utility(double carbon, double cost) {
  if (cost <= 0.0 && carbon >= 0.0) return std::numeric_limits<double>::infinity();
  return carbon / cost;
}

inline double utility(const Neighborhood& n, const TransitionState& state, const CostBook& book) {
  const Assessment a = assess(state, n, book);
  return utility(a.carbon, a.cost());
}

// Shuts down `n`: removes its edges (and orphaned nodes), converts its
// households, loads their heat pumps onto their transformers, costs any
// transformer newly pushed past 125% of rating, and credits maintenance
// savings. Throws StaleNeighborhood if `n` no longer matches the network.
inline std::pair<TransitionState, RealizedOutcome> apply_shutdown(const TransitionState& state,
                                                                  const Neighborhood& n,
                                                                  const CostBook& book,
                                                                  PeakCache* cache = nullptr) {
  check_current(state, n);
  PeakCache local;
  PeakCache& peaks = cache ? *cache : local;
  RealizedOutcome outcome = assess_current(state, n, book, peaks);

  TransitionState next = state;
  next.live_ = state.live_network().without_edges(n.edges);
  for (const EdgeKey& k : n.edges) next.decommissioned_.insert(k);
  for (HouseholdId id : outcome.households) next.converted_.insert(id);
  for (const auto& [tid, extra] : outcome.load_additions) {
    auto it = next.loads_.find(tid);
    if (it == next.loads_.end()) it = next.loads_.emplace(tid, state.load(tid)).first;
    it->second.add(extra);
  }
  for (const auto& [tid, action] : outcome.upgrade_actions) {
    if (!next.upgraded_.emplace(tid, action).second)
      throw InvariantViolation("transformer " + std::to_string(tid.value) + " upgraded twice");
  }
  next.ledger_.installs += outcome.installs;
  next.ledger_.upgrades += outcome.upgrades;
  next.ledger_.savings += outcome.savings;
  next.ledger_.group_spend[index_of(outcome.group)] += outcome.cost();
  return {std::move(next), std::move(outcome)};
}

}  // namespace heatnet

#endif  // HEATNET_NEIGHBORHOODS_HPP_
