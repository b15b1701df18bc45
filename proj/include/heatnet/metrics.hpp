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

#ifndef HEATNET_METRICS_HPP_
#define HEATNET_METRICS_HPP_

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "heatnet/neighborhoods.hpp"
#include "heatnet/planner.hpp"
#include "heatnet/scenario.hpp"

namespace heatnet {

// Aggregate outcome of a transition. Percentages are against the
// pre-transition city: gas-heated households, their emissions, all pipe
// (mains plus services) and all transformers.
struct SummaryMetrics {
  double budget = 0.0;
  double spent = 0.0;
  double installs = 0.0;
  double upgrades = 0.0;
  double savings = 0.0;
  double carbon_reduced = 0.0;
  double carbon_reduction_pct = 0.0;
  double households_converted = 0.0;
  double households_converted_pct = 0.0;
  double shutdown_length = 0.0;
  double pipeline_shutdown_pct = 0.0;
  double transformers_upgraded = 0.0;
  double transformers_upgraded_pct = 0.0;
  double spend_low = 0.0;
  double spend_medium = 0.0;
  double spend_high = 0.0;
  double share_low_pct = 0.0;
  double share_medium_pct = 0.0;
  double share_high_pct = 0.0;
  double steps = 0.0;
  double reselections = 0.0;

  // Stable name/value pairs, the order used for CSV and plan files.
  std::vector<std::pair<std::string, double>> rows() const {
    return {{"budget", budget},
            {"spent", spent},
            {"installs", installs},
            {"upgrades", upgrades},
            {"maintenance_savings", savings},
            {"carbon_reduced_t", carbon_reduced},
            {"carbon_reduction_pct", carbon_reduction_pct},
            {"households_converted", households_converted},
            {"households_converted_pct", households_converted_pct},
            {"shutdown_length_m", shutdown_length},
            {"pipeline_shutdown_pct", pipeline_shutdown_pct},
            {"transformers_upgraded", transformers_upgraded},
            {"transformers_upgraded_pct", transformers_upgraded_pct},
            {"spend_low", spend_low},
            {"spend_medium", spend_medium},
            {"spend_high", spend_high},
            {"share_low_pct", share_low_pct},
            {"share_medium_pct", share_medium_pct},
            {"share_high_pct", share_high_pct},
            {"steps", steps},
            {"reselections", reselections}};
  }
};

struct CityTotals {
  double carbon = 0.0;
  double households = 0.0;
  double pipe_length = 0.0;
  double transformers = 0.0;
};

inline CityTotals city_totals(const Scenario& s) {
  CityTotals t;
  for (const auto& [id, h] : s.households()) {
    if (h.converted) continue;
    t.carbon += carbon_emissions(h.annual_gas, s.constants());
    t.households += 1.0;
  }
  for (const auto& [key, e] : s.network().edges()) t.pipe_length += e.pipe_length();
  t.transformers = static_cast<double>(s.transformers().size());
  return t;
}

inline double percent(double part, double whole) { return whole > 0.0 ? 100.0 * part / whole : 0.0; }

inline SummaryMetrics summarize(const TransitionPlan& plan) {
  const TransitionState& st = plan.final_state;
  const Scenario& s = st.scenario();
  const CityTotals totals = city_totals(s);
  SummaryMetrics m;
  m.budget = plan.budget.total;
  m.installs = st.ledger().installs;
  m.upgrades = st.ledger().upgrades;
  m.savings = st.ledger().savings;
  m.spent = st.ledger().total();
  for (const PlanStep& step : plan.steps) m.carbon_reduced += step.outcome.carbon;
  m.carbon_reduction_pct = percent(m.carbon_reduced, totals.carbon);
  m.households_converted = static_cast<double>(st.converted_households().size());
  m.households_converted_pct = percent(m.households_converted, totals.households);
  for (const EdgeKey& e : st.decommissioned_edges())
    m.shutdown_length += s.network().edge(e).pipe_length();
  m.pipeline_shutdown_pct = percent(m.shutdown_length, totals.pipe_length);
  m.transformers_upgraded = static_cast<double>(st.upgraded_transformers().size());
  m.transformers_upgraded_pct = percent(m.transformers_upgraded, totals.transformers);
  const auto& g = st.ledger().group_spend;
  m.spend_low = g[0];
  m.spend_medium = g[1];
  m.spend_high = g[2];
  m.share_low_pct = percent(g[0], m.budget);
  m.share_medium_pct = percent(g[1], m.budget);
  m.share_high_pct = percent(g[2], m.budget);
  m.steps = static_cast<double>(plan.steps.size());
  m.reselections = plan.reselections;
  return m;
}

inline void write_metrics_csv(const SummaryMetrics& m, std::ostream& out) {
  out << "metric,value\n";
  for (const auto& [name, value] : m.rows()) out << fmt::format("{},{}\n", name, value);
}

}  // namespace heatnet

#endif  // HEATNET_METRICS_HPP_
