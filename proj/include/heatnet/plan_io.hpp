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

#ifndef HEATNET_PLAN_IO_HPP_
#define HEATNET_PLAN_IO_HPP_

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "heatnet/metrics.hpp"
#include "heatnet/neighborhoods.hpp"
#include "heatnet/planner.hpp"
#include "heatnet/scenario.hpp"
#include "heatnet/scenario_io.hpp"
#include "heatnet/types.hpp"

namespace heatnet {

inline constexpr int kPlanFormatVersion = 1;

// A plan that does not reproduce against its scenario.
class ReplayMismatch : public Error {
 public:
  using Error::Error;
};

namespace io {

inline json edge_to_json(const EdgeKey& k) { return json::array({k.tail.value, k.head.value, k.parallel}); }

inline EdgeKey edge_from_json(const Reader& r) {
  if (r.size() != 3) r.fail("expected [tail, head, index]");
  return EdgeKey{NodeId{r.at(std::size_t{0}).integer()}, NodeId{r.at(1).integer()},
                 static_cast<int>(r.at(2).integer())};
}

inline json outcome_to_json(const RealizedOutcome& o) {
  json hh = json::array();
  for (HouseholdId h : o.households) hh.push_back(h.value);
  json ups = json::array();
  for (const auto& [tid, a] : o.upgrade_actions) {
    ups.push_back({{"transformer", tid.value},
                   {"kind", std::string(to_string(a.kind))},
                   {"units", to_json(a.purchased_units)},
                   {"cost", a.cost},
                   {"post_capacity", a.post_capacity}});
  }
  return {{"group", std::string(to_string(o.group))},
          {"households", std::move(hh)},
          {"installs", o.installs},
          {"upgrades", o.upgrades},
          {"savings", o.savings},
          {"carbon", o.carbon},
          {"upgrade_actions", std::move(ups)}};
}

}  // namespace io

inline json budget_to_json(const BudgetSpec& b) {
  json j{{"total", b.total}, {"granularity", b.granularity}};
  if (b.equity) {
    json eq = json::object();
    for (const auto& [g, d] : *b.equity) eq[std::string(to_string(g))] = d;
    j["equity"] = std::move(eq);
  }
  return j;
}

inline BudgetSpec budget_from_json(const io::Reader& r) {
  BudgetSpec b;
  b.total = r.at("total").number();
  b.granularity = r.at("granularity").number();
  if (r.has("equity")) {
    io::Reader eq = r.at("equity");
    if (!eq.node().is_object()) eq.fail("expected an object");
    b.equity.emplace();
    for (const auto& [key, value] : eq.node().items()) {
      auto g = parse_income_group(key);
      if (!g) eq.at(key.c_str()).fail("unknown income group");
      (*b.equity)[*g] = eq.at(key.c_str()).number();
    }
  }
  return b;
}

inline json metrics_to_json(const SummaryMetrics& m) {
  json j = json::object();
  for (const auto& [name, value] : m.rows()) j[name] = value;
  return j;
}

inline json to_json(const TransitionPlan& plan, const std::string& scenario_digest) {
  json steps = json::array();
  for (const PlanStep& s : plan.steps) {
    json edges = json::array();
    for (const EdgeKey& e : s.neighborhood.edges) edges.push_back(io::edge_to_json(e));
    json step{{"pseudo_index", io::edge_to_json(s.neighborhood.pseudo_index)},
              {"edges", std::move(edges)}};
    step["outcome"] = io::outcome_to_json(s.outcome);
    steps.push_back(std::move(step));
  }
  json j;
  j["format_version"] = kPlanFormatVersion;
  j["scenario_digest"] = scenario_digest;
  j["budget"] = budget_to_json(plan.budget);
  j["constants"] = to_json(plan.final_state.scenario().costs());
  j["reselections"] = plan.reselections;
  j["steps"] = std::move(steps);
  j["metrics"] = metrics_to_json(summarize(plan));
  return j;
}

inline std::string plan_text(const TransitionPlan& plan, const std::string& scenario_digest) {
  return to_json(plan, scenario_digest).dump(1) + "\n";
}

// Plan document as read back, before replay.
struct PlanFile {
  std::string scenario_digest;
  BudgetSpec budget;
  CostBook costs;
  int reselections = 0;
  std::vector<Neighborhood> sequence;
  json recorded_outcomes = json::array();
  json recorded_metrics = json::object();
};

inline PlanFile plan_from_text(const std::string& text, const std::string& name = "plan") {
  const json doc = io::parse_text(text, name);
  io::Reader root(doc, name);
  if (!doc.is_object()) root.fail("expected an object");
  if (root.at("format_version").integer() != kPlanFormatVersion)
    root.at("format_version").fail("unsupported plan format version");
  PlanFile p;
  p.scenario_digest = root.at("scenario_digest").string();
  p.budget = budget_from_json(root.at("budget"));
  p.costs = cost_book_from_json(root.at("constants"));
  p.reselections = static_cast<int>(root.at("reselections").integer());
  io::Reader steps = root.at("steps");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    io::Reader s = steps.at(i);
    Neighborhood n{io::edge_from_json(s.at("pseudo_index")), {}};
    io::Reader edges = s.at("edges");
    for (std::size_t j = 0; j < edges.size(); ++j) n.edges.push_back(io::edge_from_json(edges.at(j)));
    p.sequence.push_back(std::move(n));
    p.recorded_outcomes.push_back(s.at("outcome").node());
  }
  p.recorded_metrics = root.at("metrics").node();
  if (!p.recorded_metrics.is_object()) root.at("metrics").fail("expected an object");
  return p;
}

// Replays `file` against the scenario it claims to come from and checks that
// every step and every stored metric reproduces exactly.
inline TransitionPlan replay_plan(const PlanFile& file, const Scenario& scenario,
                                  const std::string& scenario_digest) {
  if (file.scenario_digest != scenario_digest)
    throw ReplayMismatch("plan was made from scenario " + file.scenario_digest +
                         ", this scenario is " + scenario_digest);
  auto adjusted = std::make_shared<const Scenario>(scenario.with_costs(file.costs));
  TransitionPlan plan{file.budget, {}, TransitionState::initial(adjusted), file.reselections};
  PeakCache cache;
  for (std::size_t i = 0; i < file.sequence.size(); ++i) {
    std::optional<std::pair<TransitionState, RealizedOutcome>> r;
    try {
      r.emplace(apply_shutdown(plan.final_state, file.sequence[i], adjusted->costs(), &cache));
    } catch (const StaleNeighborhood& e) {
      throw ReplayMismatch("step " + std::to_string(i) + ": " + e.what());
    }
    if (io::outcome_to_json(r->second) != file.recorded_outcomes[i])
      throw ReplayMismatch("step " + std::to_string(i) + ": outcome differs from the plan file");
    plan.steps.push_back({file.sequence[i], std::move(r->second)});
    plan.final_state = std::move(r->first);
  }
  const json recomputed = metrics_to_json(summarize(plan));
  if (recomputed != file.recorded_metrics) {
    for (const auto& [name, value] : recomputed.items()) {
      if (!file.recorded_metrics.contains(name) || file.recorded_metrics[name] != value)
        throw ReplayMismatch("metric " + name + " differs from the plan file");
    }
    throw ReplayMismatch("plan file has unexpected metrics");
  }
  return plan;
}

}  // namespace heatnet

#endif  // HEATNET_PLAN_IO_HPP_
