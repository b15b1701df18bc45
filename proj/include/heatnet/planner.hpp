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

#ifndef HEATNET_PLANNER_HPP_
#define HEATNET_PLANNER_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heatnet/costs.hpp"
#include "heatnet/knapsack.hpp"
#include "heatnet/load_series.hpp"
#include "heatnet/neighborhoods.hpp"
#include "heatnet/scenario.hpp"
#include "heatnet/types.hpp"

namespace heatnet {

struct BudgetSpec {
  double total = 0.0;          // B
  double granularity = 1000.0; // DP weight unit
  // Per-group caps d_k; absent for the unconstrained problem.
  std::optional<std::map<IncomeGroup, double>> equity;

  std::vector<std::string> violations() const {
    std::vector<std::string> out;
    if (!(total >= 0.0) || !std::isfinite(total)) out.push_back("budget must be >= 0");
    if (!(granularity > 0.0)) out.push_back("granularity must be positive");
    if (equity) {
      double sum = 0.0;
      for (const auto& [g, d] : *equity) {
        if (!(d >= 0.0))
          out.push_back("allocation for " + std::string(to_string(g)) + " is negative");
        sum += d;
      }
      if (!(std::abs(sum - total) <= granularity))
        out.push_back("allocations sum to " + std::to_string(sum) + ", budget is " +
                      std::to_string(total));
    }
    return out;
  }

  // Splits `total` by fractional shares.
  static BudgetSpec with_shares(double total, const std::map<IncomeGroup, double>& shares,
                                double granularity = 1000.0) {
    BudgetSpec b{total, granularity, std::map<IncomeGroup, double>{}};
    for (const auto& [g, s] : shares) (*b.equity)[g] = s * total;
    return b;
  }
};

struct PlanStep {
  Neighborhood neighborhood;
  RealizedOutcome outcome;
};

struct TransitionPlan {
  BudgetSpec budget;
  std::vector<PlanStep> steps;
  TransitionState final_state;
  int reselections = 0;  // rounds cut short by a stale or mis-estimated conversion
};

namespace detail {

struct Candidate {
  Neighborhood neighborhood;
  Assessment estimate;
  double utility = 0.0;
};

// Descending utility; ties to larger carbon, then smaller pseudo-index.
inline bool by_utility(const Candidate& a, const Candidate& b) {
  if (a.utility != b.utility) return a.utility > b.utility;
  if (a.estimate.carbon != b.estimate.carbon) return a.estimate.carbon > b.estimate.carbon;
  return a.neighborhood.pseudo_index < b.neighborhood.pseudo_index;
}

class SelectionLoop {
 public:
  SelectionLoop(TransitionPlan& plan, const CostBook& book, PeakCache& cache)
      : plan_(plan), book_(book), cache_(cache) {}

  // Converts neighborhoods of `group` (all groups when empty) until the
  // knapsack over the remaining budget selects nothing.
  void run(std::optional<IncomeGroup> group, double cap) {
    group_ = group;
    cap_ = cap;
    while (true) {
      std::vector<Candidate> candidates = gather();

      // Free neighborhoods dominate: take them first, in utility order.
      std::vector<Candidate> free;
      for (const auto& c : candidates)
        if (c.estimate.cost() <= 0.0 && c.estimate.carbon >= 0.0) free.push_back(c);
      if (!free.empty()) {
        std::sort(free.begin(), free.end(), by_utility);
        bool progressed = false;
        for (const auto& c : free) progressed |= try_convert(c, /*tolerance=*/0.0);
        if (progressed) continue;
      }

      std::vector<const Candidate*> paying;
      for (const auto& c : candidates)
        if (c.estimate.cost() > 0.0 && c.estimate.carbon > 0.0) paying.push_back(&c);
      if (paying.empty()) break;

      const double remaining = remaining_budget();
      const auto capacity = static_cast<std::int64_t>(
          std::floor(std::max(0.0, remaining) / plan_.budget.granularity));
      std::vector<double> values;
      std::vector<std::int64_t> weights;
      std::int64_t lightest = std::numeric_limits<std::int64_t>::max();
      for (const Candidate* c : paying) {
        values.push_back(c->estimate.carbon);
        weights.push_back(static_cast<std::int64_t>(
            std::ceil(c->estimate.cost() / plan_.budget.granularity)));
        lightest = std::min(lightest, weights.back());
      }
      const KnapsackSolution chosen =
          capacity < lightest ? KnapsackSolution{} : knapsack_dp(values, weights, capacity);
      if (chosen.items.empty()) {
        // Rounded weights are conservative; spend the last fraction of a
        // unit on anything whose exact cost still fits.
        if (fill(paying, remaining)) continue;
        break;
      }
      std::vector<Candidate> order;
      for (std::size_t i : chosen.items) order.push_back(*paying[i]);
      std::sort(order.begin(), order.end(), by_utility);

      std::size_t converted = 0;
      for (const auto& c : order) {
        if (!try_convert(c, plan_.budget.granularity)) break;
        ++converted;
      }
      if (converted == 0) break;
      if (converted < order.size()) ++plan_.reselections;
    }
  }

 private:
  std::vector<Candidate> gather() {
    std::vector<Candidate> out;
    const TransitionState& state = plan_.final_state;
    for (auto& n : enumerate_neighborhoods(state)) {
      Assessment a = assess_current(state, n, book_, cache_);
      if (group_ && a.group != *group_) continue;
      const double u = utility(a.carbon, a.cost());
      out.push_back({std::move(n), std::move(a), u});
    }
    return out;
  }

  bool fill(std::vector<const Candidate*> paying, double remaining) {
    std::sort(paying.begin(), paying.end(),
              [](const Candidate* a, const Candidate* b) { return by_utility(*a, *b); });
    for (const Candidate* c : paying)
      if (c->estimate.cost() <= remaining && try_convert(*c, 0.0)) return true;
    return false;
  }

  double remaining_budget() const {
    const SpendLedger& ledger = plan_.final_state.ledger();
    double r = plan_.budget.total - ledger.total();
    if (group_) r = std::min(r, cap_ - ledger.group_spend[index_of(*group_)]);
    return r;
  }

  // Applies `c` if it is still current, its realized cost is within
  // `tolerance` of the estimate, and the realized ledger stays in budget.
  bool try_convert(const Candidate& c, double tolerance) {
    const TransitionState& state = plan_.final_state;
    if (!state.live_network().has_edge(c.neighborhood.pseudo_index)) return false;
    std::optional<std::pair<TransitionState, RealizedOutcome>> result;
    try {
      result.emplace(apply_shutdown(state, c.neighborhood, book_, &cache_));
    } catch (const StaleNeighborhood&) {
      return false;
    }
    const auto& [next, outcome] = *result;
    if (outcome.cost() > c.estimate.cost() + tolerance) return false;
    if (next.ledger().total() > plan_.budget.total) return false;
    if (group_ && next.ledger().group_spend[index_of(*group_)] > cap_) return false;
    plan_.steps.push_back({c.neighborhood, outcome});
    plan_.final_state = std::move(result->first);
    return true;
  }

  TransitionPlan& plan_;
  const CostBook& book_;
  PeakCache& cache_;
  std::optional<IncomeGroup> group_;
  double cap_ = 0.0;
};

inline void check_budget(const BudgetSpec& budget) {
  auto problems = budget.violations();
  if (!problems.empty()) throw ConfigError(problems.front());
}

}  // namespace detail

// Network-aware transition: repeated knapsack selection over the current
// neighborhoods, converting the chosen set in utility order and re-selecting
// with the remaining budget whenever a conversion turns out stale or
// costlier than estimated.
inline TransitionPlan solve_nhpt(std::shared_ptr<const Scenario> scenario,
                                 const BudgetSpec& budget) {
  detail::check_budget(budget);
  if (budget.equity) throw ConfigError("solve_nhpt takes no allocation vector; use solve_enhpt");
  TransitionPlan plan{budget, {}, TransitionState::initial(scenario), 0};
  PeakCache cache;
  detail::SelectionLoop(plan, scenario->costs(), cache).run(std::nullopt, budget.total);
  return plan;
}

// Equity-constrained transition: the same loop run per income group, each
// restricted to that group's neighborhoods and capped at its allocation.
// Groups run in order low, medium, high on one shared state so the union
// of selections never double-counts a shared edge.
inline TransitionPlan solve_enhpt(std::shared_ptr<const Scenario> scenario,
                                  const BudgetSpec& budget) {
  detail::check_budget(budget);
  if (!budget.equity) throw ConfigError("solve_enhpt requires an allocation vector");
  for (const auto& [id, h] : scenario->households()) {
    if (!budget.equity->contains(h.income_group))
      throw ConfigError("income group '" + std::string(to_string(h.income_group)) +
                        "' is present in the scenario but missing from the allocation");
  }
  TransitionPlan plan{budget, {}, TransitionState::initial(scenario), 0};
  PeakCache cache;
  detail::SelectionLoop loop(plan, scenario->costs(), cache);
  for (const auto& [group, cap] : *budget.equity) loop.run(group, cap);
  return plan;
}

inline TransitionPlan solve(std::shared_ptr<const Scenario> scenario, const BudgetSpec& budget) {
  return budget.equity ? solve_enhpt(std::move(scenario), budget)
                       : solve_nhpt(std::move(scenario), budget);
}

// Re-applies a recorded sequence of neighborhoods from the initial state.
inline std::pair<TransitionState, std::vector<RealizedOutcome>> replay(
    std::shared_ptr<const Scenario> scenario, const std::vector<Neighborhood>& sequence) {
  TransitionState state = TransitionState::initial(scenario);
  std::vector<RealizedOutcome> outcomes;
  PeakCache cache;
  for (const auto& n : sequence) {
    auto [next, outcome] = apply_shutdown(state, n, scenario->costs(), &cache);
    state = std::move(next);
    outcomes.push_back(std::move(outcome));
  }
  return {std::move(state), std::move(outcomes)};
}

// Hourly transformer loads with every gas household on a heat pump.
inline std::map<TransformerId, LoadSeries> full_conversion_loads(const Scenario& scenario) {
  std::map<TransformerId, LoadSeries> loads;
  for (const auto& [id, t] : scenario.transformers()) loads.emplace(id, t.baseline_load);
  for (const auto& [id, h] : scenario.households()) {
    if (h.converted) continue;
    loads.at(h.transformer).add(ashp_electric_adder(h.hourly_gas, scenario.constants()));
  }
  return loads;
}

// Heat pumps in every gas-heated home plus every upgrade the fully
// converted grid needs, each transformer costed once. No maintenance
// savings are netted out.
inline double benchmark_budget(const Scenario& scenario) {
  double installs = 0.0;
  for (const auto& [id, h] : scenario.households())
    if (!h.converted) installs += ashp_install_cost(h.annual_gas, scenario.constants());
  double upgrades = 0.0;
  for (const auto& [id, load] : full_conversion_loads(scenario)) {
    const double cap = scenario.transformer(id).capacity_kva;
    upgrades += upgrade_action(cap, load.peak(), scenario.costs()).cost;
  }
  return installs + upgrades;
}

struct OverloadStatistics {
  double pct_overloaded = 0.0;        // peak > 125% of capacity
  double pct_highly_utilized = 0.0;   // peak in (90%, 125%]
  std::map<TransformerId, double> pct_time_overloaded;
};

inline OverloadStatistics overload_statistics(const std::map<TransformerId, LoadSeries>& loads,
                                              const std::map<TransformerId, double>& capacity) {
  OverloadStatistics s;
  if (loads.empty()) return s;
  int overloaded = 0, high = 0;
  for (const auto& [id, load] : loads) {
    const double cap = capacity.at(id);
    const auto values = load.materialize();
    int hours = 0;
    double peak = load.empty() ? 0.0 : -std::numeric_limits<double>::infinity();
    for (double v : values) {
      peak = std::max(peak, v);
      if (v > CostBook::kOverloadRatio * cap) ++hours;
    }
    if (peak > CostBook::kOverloadRatio * cap) ++overloaded;
    else if (peak > CostBook::kHighUtilizationRatio * cap) ++high;
    s.pct_time_overloaded[id] = 100.0 * hours / static_cast<double>(kHoursPerYear);
  }
  const double n = static_cast<double>(loads.size());
  s.pct_overloaded = 100.0 * overloaded / n;
  s.pct_highly_utilized = 100.0 * high / n;
  return s;
}

// Statistics for a transition state; upgraded transformers are judged
// against their post-upgrade capacity.
inline OverloadStatistics overload_statistics(const Scenario& scenario,
                                              const TransitionState& state) {
  std::map<TransformerId, LoadSeries> loads;
  std::map<TransformerId, double> capacity;
  for (const auto& [id, t] : scenario.transformers()) {
    loads.emplace(id, state.load(id));
    auto up = state.upgraded_transformers().find(id);
    capacity.emplace(id, up != state.upgraded_transformers().end() ? up->second.post_capacity
                                                                   : t.capacity_kva);
  }
  return overload_statistics(loads, capacity);
}

// Statistics for the hypothetical fully converted grid at existing ratings.
inline OverloadStatistics full_conversion_overload_statistics(const Scenario& scenario) {
  std::map<TransformerId, double> capacity;
  for (const auto& [id, t] : scenario.transformers()) capacity.emplace(id, t.capacity_kva);
  return overload_statistics(full_conversion_loads(scenario), capacity);
}

}  // namespace heatnet

#endif  // HEATNET_PLANNER_HPP_
