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

// Small hand-built scenarios and independent oracles shared by the suites.

#ifndef HEATNET_TESTS_SUPPORT_HPP_
#define HEATNET_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "heatnet.hpp"

namespace heatnet::testing {

// Builder for tiny scenarios. Households are attached to edges explicitly;
// served lists and the median are filled in by build().
class MiniCity {
 public:
  MiniCity& node(std::int64_t id, double x = 0.0, double y = 0.0) {
    parts_.nodes.push_back({NodeId(id), {x, y}});
    return *this;
  }

  MiniCity& edge(std::int64_t tail, std::int64_t head, double length,
                 std::vector<std::int64_t> households = {}, double service = 0.0,
                 int parallel = 0) {
    PipeEdge e;
    e.key = {NodeId(tail), NodeId(head), parallel};
    e.length = length;
    for (auto h : households) {
      e.households.push_back(HouseholdId(h));
      e.service_lengths.push_back(service);
    }
    parts_.edges.push_back(std::move(e));
    return *this;
  }

  // Winter-shaped usage.
  MiniCity& household(std::int64_t id, double annual, std::int64_t transformer,
                      IncomeGroup group = IncomeGroup::kLow) {
    return household(id, annual, LoadSeries(winter_peaked_profile(), annual), transformer, group);
  }

  MiniCity& household(std::int64_t id, double annual, LoadSeries hourly, std::int64_t transformer,
                      IncomeGroup group = IncomeGroup::kLow) {
    Household h;
    h.id = HouseholdId(id);
    h.annual_gas = annual;
    h.hourly_gas = std::move(hourly);
    h.transformer = TransformerId(transformer);
    h.income_group = group;
    parts_.households.push_back(std::move(h));
    return *this;
  }

  MiniCity& transformer(std::int64_t id, double capacity, LoadSeries baseline) {
    Transformer t;
    t.id = TransformerId(id);
    t.capacity_kva = capacity;
    t.baseline_load = std::move(baseline);
    parts_.transformers.push_back(std::move(t));
    return *this;
  }

  MiniCity& transformer(std::int64_t id, double capacity, double baseline_peak = 0.0) {
    return transformer(id, capacity, constant_series("baseline" + std::to_string(id), baseline_peak));
  }

  MiniCity& source(std::int64_t id) {
    parts_.source = NodeId(id);
    return *this;
  }
  MiniCity& median(double m) {
    median_ = m;
    return *this;
  }
  MiniCity& maintenance_rate(double r) {
    parts_.costs.constants.maintenance_rate = r;
    return *this;
  }
  CostBook& costs() { return parts_.costs; }

  ScenarioParts parts() const {
    ScenarioParts p = parts_;
    for (auto& t : p.transformers)
      for (const auto& h : p.households)
        if (h.transformer == t.id) t.served_households.push_back(h.id);
    if (median_) {
      p.costs.constants.median_annual_gas = *median_;
    } else {
      std::vector<double> usage;
      for (const auto& h : p.households) usage.push_back(h.annual_gas);
      p.costs.constants.median_annual_gas = median_annual_gas(usage);
    }
    GasNetwork net(p.nodes, p.edges, p.source);
    net = derive_maintenance(net, p.costs.constants);
    p.edges.clear();
    for (const auto& [k, e] : net.edges()) p.edges.push_back(e);
    return p;
  }

  std::shared_ptr<const Scenario> build() const { return std::make_shared<const Scenario>(parts()); }

  static LoadSeries constant_series(const std::string& key, double value) {
    return LoadSeries::explicit_series(key, std::vector<double>(kHoursPerYear, value));
  }

  // All of `total` in a single hour.
  static LoadSeries spike(const std::string& key, std::size_t hour, double total) {
    std::vector<double> v(kHoursPerYear, 0.0);
    v[hour] = total;
    return LoadSeries::explicit_series(key, std::move(v));
  }

 private:
  ScenarioParts parts_;
  std::optional<double> median_;
};

// ---------------------------------------------------------------------------
// Oracles.

// Union-find over node ids; edges taken as undirected.
inline std::vector<std::vector<NodeId>> union_find_components(const std::vector<NodeId>& nodes,
                                                              const std::vector<EdgeKey>& edges) {
  std::map<NodeId, NodeId> parent;
  for (NodeId n : nodes) parent[n] = n;
  auto find = [&](NodeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : edges) parent[find(e.tail)] = find(e.head);
  std::map<NodeId, std::vector<NodeId>> groups;
  for (NodeId n : nodes) groups[find(n)].push_back(n);
  std::vector<std::vector<NodeId>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

// Nodes no longer reachable from the source, ignoring direction, once
// `removed` is gone. Plain BFS over an adjacency list built from scratch.
inline std::set<NodeId> bfs_cut_off(const GasNetwork& net, const std::set<EdgeKey>& removed) {
  std::map<NodeId, std::vector<NodeId>> adj;
  for (const auto& [k, e] : net.edges()) {
    if (removed.contains(k)) continue;
    adj[k.tail].push_back(k.head);
    adj[k.head].push_back(k.tail);
  }
  std::set<NodeId> seen{net.source()};
  std::queue<NodeId> q;
  q.push(net.source());
  while (!q.empty()) {
    NodeId n = q.front();
    q.pop();
    for (NodeId m : adj[n])
      if (seen.insert(m).second) q.push(m);
  }
  std::set<NodeId> out;
  for (const auto& [id, n] : net.nodes())
    if (!seen.contains(id)) out.insert(id);
  return out;
}

// Edges with at least one endpoint in `nodes`.
inline std::vector<EdgeKey> edges_touching(const GasNetwork& net, const std::set<NodeId>& nodes) {
  std::vector<EdgeKey> out;
  for (const auto& [k, e] : net.edges())
    if (nodes.contains(k.tail) || nodes.contains(k.head)) out.push_back(k);
  return out;
}

// Exhaustive 0/1 knapsack over all 2^n subsets.
inline double brute_force_knapsack(const std::vector<double>& values,
                                   const std::vector<std::int64_t>& weights, std::int64_t capacity) {
  const std::size_t n = values.size();
  double best = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double v = 0.0;
    std::int64_t w = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) {
        v += values[i];
        w += weights[i];
      }
    if (w <= capacity) best = std::max(best, v);
  }
  return best;
}

// Random tree with nodes 0..n-1 rooted at 0, edges parent -> child.
inline GasNetwork random_tree(std::mt19937_64& rng, int n) {
  std::vector<Node> nodes;
  std::vector<PipeEdge> edges;
  for (int i = 0; i < n; ++i) nodes.push_back({NodeId(i), {0.0, 0.0}});
  for (int i = 1; i < n; ++i) {
    int parent = std::uniform_int_distribution<int>(0, i - 1)(rng);
    bool flip = std::uniform_int_distribution<int>(0, 4)(rng) == 0;  // some edges point upstream
    PipeEdge e;
    e.key = flip ? EdgeKey{NodeId(i), NodeId(parent), 0} : EdgeKey{NodeId(parent), NodeId(i), 0};
    e.length = 1.0;
    edges.push_back(e);
  }
  return GasNetwork(nodes, edges, NodeId(0));
}

// Random tree plus extra chords, occasionally parallel to existing edges.
inline GasNetwork random_cyclic(std::mt19937_64& rng, int n, int chords) {
  GasNetwork tree = random_tree(rng, n);
  std::vector<Node> nodes;
  for (const auto& [id, node] : tree.nodes()) nodes.push_back(node);
  std::vector<PipeEdge> edges;
  for (const auto& [k, e] : tree.edges()) edges.push_back(e);
  std::map<std::pair<NodeId, NodeId>, int> used;
  for (const auto& e : edges) used[{e.key.tail, e.key.head}] = 1;
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int c = 0; c < chords; ++c) {
    int a = pick(rng), b = pick(rng);
    if (a == b) continue;
    PipeEdge e;
    e.key = {NodeId(a), NodeId(b), used[{NodeId(a), NodeId(b)}]++};
    e.length = 1.0;
    edges.push_back(e);
  }
  return GasNetwork(nodes, edges, NodeId(0));
}

}  // namespace heatnet::testing

#endif  // HEATNET_TESTS_SUPPORT_HPP_
