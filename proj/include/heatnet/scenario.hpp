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

#ifndef HEATNET_SCENARIO_HPP_
#define HEATNET_SCENARIO_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "heatnet/costs.hpp"
#include "heatnet/load_series.hpp"
#include "heatnet/network.hpp"
#include "heatnet/types.hpp"

namespace heatnet {

struct Household {
  HouseholdId id;
  Point location;
  double annual_gas = 0.0;  // CCF/year
  LoadSeries hourly_gas;    // CCF/hour, sums to annual_gas
  TransformerId transformer;
  IncomeGroup income_group = IncomeGroup::kLow;
  bool converted = false;

  friend bool operator==(const Household&, const Household&) = default;
};

struct Transformer {
  TransformerId id;
  double capacity_kva = 0.0;
  LoadSeries baseline_load;  // kVA
  std::vector<HouseholdId> served_households;

  friend bool operator==(const Transformer&, const Transformer&) = default;
};

// Unvalidated scenario contents, as read from a file or assembled by a
// generator. Scenario is the validated form.
struct ScenarioParts {
  std::vector<Node> nodes;
  std::vector<PipeEdge> edges;
  NodeId source;
  std::vector<Household> households;
  std::vector<Transformer> transformers;
  CostBook costs;
  std::string provenance;
};

inline double median_annual_gas(const std::vector<double>& usage) {
  if (usage.empty()) return 0.0;
  std::vector<double> v = usage;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Every violated structural invariant, one line per offender.
inline std::vector<std::string> scenario_violations(const ScenarioParts& p) {
  std::vector<std::string> out = GasNetwork::check(p.nodes, p.edges, p.source);

  std::map<HouseholdId, const Household*> households;
  for (const auto& h : p.households) {
    if (!households.emplace(h.id, &h).second)
      out.push_back("duplicate household " + std::to_string(h.id.value));
  }
  std::map<TransformerId, const Transformer*> transformers;
  for (const auto& t : p.transformers) {
    if (!transformers.emplace(t.id, &t).second)
      out.push_back("duplicate transformer " + std::to_string(t.id.value));
    if (!(t.capacity_kva > 0.0))
      out.push_back("transformer " + std::to_string(t.id.value) + " has non-positive capacity");
  }

  std::map<HouseholdId, int> attachments;
  for (const auto& e : p.edges) {
    for (HouseholdId h : e.households) {
      if (!households.contains(h)) {
        out.push_back("edge " + to_string(e.key) + " references missing household " +
                      std::to_string(h.value));
      }
      ++attachments[h];
    }
  }

  for (const auto& h : p.households) {
    const std::string name = "household " + std::to_string(h.id.value);
    auto t = transformers.find(h.transformer);
    if (t == transformers.end()) {
      out.push_back(name + " references missing transformer " +
                    std::to_string(h.transformer.value));
    } else {
      const auto& served = t->second->served_households;
      if (std::find(served.begin(), served.end(), h.id) == served.end())
        out.push_back(name + " is not listed by its transformer " +
                      std::to_string(h.transformer.value));
    }
    const int n = attachments.contains(h.id) ? attachments[h.id] : 0;
    if (n != 1)
      out.push_back(name + " is attached to " + std::to_string(n) + " edges, expected 1");
    if (!(h.annual_gas >= 0.0) || !std::isfinite(h.annual_gas))
      out.push_back(name + " has invalid annual gas usage");
    const double sum = h.hourly_gas.total();
    const double tol = 1e-6 * std::max(1.0, std::abs(h.annual_gas));
    if (!(std::abs(sum - h.annual_gas) <= tol))
      out.push_back(name + " hourly gas sums to " + std::to_string(sum) +
                    ", annual is " + std::to_string(h.annual_gas));
  }

  for (const auto& t : p.transformers) {
    for (HouseholdId h : t.served_households) {
      auto it = households.find(h);
      if (it == households.end()) {
        out.push_back("transformer " + std::to_string(t.id.value) +
                      " serves missing household " + std::to_string(h.value));
      } else if (it->second->transformer != t.id) {
        out.push_back("transformer " + std::to_string(t.id.value) + " lists household " +
                      std::to_string(h.value) + " which names transformer " +
                      std::to_string(it->second->transformer.value));
      }
    }
  }

  for (auto& v : p.costs.violations()) out.push_back(std::move(v));
  return out;
}

// A validated planning input: network, households, transformers, and the
// cost book. Immutable once built.
class Scenario {
 public:
  explicit Scenario(ScenarioParts parts)
      : network_(validated(parts)), costs_(parts.costs),
        provenance_(std::move(parts.provenance)) {
    for (auto& h : parts.households) households_.emplace(h.id, std::move(h));
    for (auto& t : parts.transformers) transformers_.emplace(t.id, std::move(t));
    for (const auto& [k, e] : network_.edges()) {
      for (HouseholdId h : e.households) edge_of_.emplace(h, k);
    }
  }

  const GasNetwork& network() const { return network_; }
  const CostBook& costs() const { return costs_; }
  const PhysicalConstants& constants() const { return costs_.constants; }
  const std::string& provenance() const { return provenance_; }
  const std::map<HouseholdId, Household>& households() const { return households_; }
  const std::map<TransformerId, Transformer>& transformers() const { return transformers_; }

  const Household& household(HouseholdId id) const {
    auto it = households_.find(id);
    if (it == households_.end())
      throw InvalidReference("unknown household " + std::to_string(id.value));
    return it->second;
  }

  const Transformer& transformer(TransformerId id) const {
    auto it = transformers_.find(id);
    if (it == transformers_.end())
      throw InvalidReference("unknown transformer " + std::to_string(id.value));
    return it->second;
  }

  const EdgeKey& edge_of(HouseholdId id) const { return edge_of_.at(id); }

  // Same data under a different cost book.
  Scenario with_costs(const CostBook& book) const {
    auto problems = book.violations();
    if (!problems.empty()) throw ValidationError(std::move(problems));
    Scenario out = *this;
    out.costs_ = book;
    return out;
  }

  ScenarioParts parts() const {
    ScenarioParts p;
    for (const auto& [id, n] : network_.nodes()) p.nodes.push_back(n);
    for (const auto& [k, e] : network_.edges()) p.edges.push_back(e);
    p.source = network_.source();
    for (const auto& [id, h] : households_) p.households.push_back(h);
    for (const auto& [id, t] : transformers_) p.transformers.push_back(t);
    p.costs = costs_;
    p.provenance = provenance_;
    return p;
  }

  friend bool operator==(const Scenario& a, const Scenario& b) {
    return a.network_ == b.network_ && a.costs_ == b.costs_ &&
           a.provenance_ == b.provenance_ && a.households_ == b.households_ &&
           a.transformers_ == b.transformers_;
  }

 private:
  static GasNetwork validated(ScenarioParts& parts) {
    auto problems = scenario_violations(parts);
    if (!problems.empty()) throw ValidationError(std::move(problems));
    return GasNetwork(parts.nodes, parts.edges, parts.source);
  }

  GasNetwork network_;
  CostBook costs_;
  std::string provenance_;
  std::map<HouseholdId, Household> households_;
  std::map<TransformerId, Transformer> transformers_;
  std::map<HouseholdId, EdgeKey> edge_of_;
};

}  // namespace heatnet

#endif  // HEATNET_SCENARIO_HPP_
