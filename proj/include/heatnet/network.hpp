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

#ifndef HEATNET_NETWORK_HPP_
#define HEATNET_NETWORK_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heatnet/types.hpp"

namespace heatnet {

struct Node {
  NodeId id;
  Point location;

  friend bool operator==(const Node&, const Node&) = default;
};

// One gas main segment. Households attached to it are served through
// service lines whose lengths are stored alongside.
struct PipeEdge {
  EdgeKey key;
  double length = 0.0;  // meters
  std::vector<HouseholdId> households;
  std::vector<double> service_lengths;  // meters, one per household
  double annual_maintenance = 0.0;      // currency per year

  double service_total() const {
    return std::accumulate(service_lengths.begin(), service_lengths.end(), 0.0);
  }
  double pipe_length() const { return length + service_total(); }

  friend bool operator==(const PipeEdge&, const PipeEdge&) = default;
};

// Directed, weakly connected gas distribution graph with a single source
// (the gate station). Immutable: every modification returns a new network.
class GasNetwork {
 public:
  GasNetwork(std::vector<Node> nodes, std::vector<PipeEdge> edges, NodeId source)
      : source_(source) {
    auto problems = check(nodes, edges, source);
    if (!problems.empty()) throw ValidationError(std::move(problems));
    for (auto& n : nodes) nodes_.emplace(n.id, n);
    for (auto& e : edges) edges_.emplace(e.key, std::move(e));
    build_incidence();
  }

  // Every structural problem with the given parts; empty when valid.
  static std::vector<std::string> check(std::span<const Node> nodes,
                                        std::span<const PipeEdge> edges,
                                        NodeId source);

  NodeId source() const { return source_; }
  const std::map<NodeId, Node>& nodes() const { return nodes_; }
  const std::map<EdgeKey, PipeEdge>& edges() const { return edges_; }

  bool has_node(NodeId n) const { return nodes_.contains(n); }
  bool has_edge(const EdgeKey& k) const { return edges_.contains(k); }

  const PipeEdge& edge(const EdgeKey& k) const {
    auto it = edges_.find(k);
    if (it == edges_.end()) throw InvalidReference("unknown edge " + to_string(k));
    return it->second;
  }

  const Node& node(NodeId n) const {
    auto it = nodes_.find(n);
    if (it == nodes_.end())
      throw InvalidReference("unknown node " + std::to_string(n.value));
    return it->second;
  }

  // Edges touching `n` in either direction, in key order.
  std::span<const EdgeKey> incident(NodeId n) const {
    auto it = incidence_.find(n);
    if (it == incidence_.end()) return {};
    return it->second;
  }

  std::vector<EdgeKey> edge_keys() const {
    std::vector<EdgeKey> out;
    out.reserve(edges_.size());
    for (const auto& [k, e] : edges_) out.push_back(k);
    return out;
  }

  // Removes the given edges and every non-source node left with degree 0.
  // The caller is responsible for weak connectivity of the result.
  GasNetwork without_edges(std::span<const EdgeKey> removed) const {
    GasNetwork out = *this;
    for (const auto& k : removed) {
      if (out.edges_.erase(k) == 0) throw InvalidReference("unknown edge " + to_string(k));
    }
    out.build_incidence();
    for (auto it = out.nodes_.begin(); it != out.nodes_.end();) {
      if (it->first != out.source_ && !out.incidence_.contains(it->first)) {
        it = out.nodes_.erase(it);
      } else {
        ++it;
      }
    }
    return out;
  }

  // Same topology with replaced edge payloads (attachments, maintenance).
  GasNetwork with_edge_payloads(std::vector<PipeEdge> edges) const {
    GasNetwork out = *this;
    for (auto& e : edges) {
      auto it = out.edges_.find(e.key);
      if (it == out.edges_.end()) throw InvalidReference("unknown edge " + to_string(e.key));
      it->second = std::move(e);
    }
    return out;
  }

  friend bool operator==(const GasNetwork& a, const GasNetwork& b) {
    return a.source_ == b.source_ && a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  void build_incidence() {
    incidence_.clear();
    for (const auto& [k, e] : edges_) {
      incidence_[k.tail].push_back(k);
      if (k.head != k.tail) incidence_[k.head].push_back(k);
    }
  }

  NodeId source_;
  std::map<NodeId, Node> nodes_;
  std::map<EdgeKey, PipeEdge> edges_;
  std::map<NodeId, std::vector<EdgeKey>> incidence_;
};

// Partition of `nodes` into weakly connected components. Each component is
// sorted and components are ordered by their smallest node. Edges whose
// endpoints are not listed in `nodes` are ignored.
inline std::vector<std::vector<NodeId>> weakly_connected_components(
    std::span<const NodeId> nodes, std::span<const EdgeKey> edges) {
  std::map<NodeId, std::vector<NodeId>> adjacency;
  for (NodeId n : nodes) adjacency[n];
  for (const auto& e : edges) {
    if (!adjacency.contains(e.tail) || !adjacency.contains(e.head)) continue;
    adjacency[e.tail].push_back(e.head);
    adjacency[e.head].push_back(e.tail);
  }
  std::set<NodeId> seen;
  std::vector<std::vector<NodeId>> components;
  for (const auto& [start, unused] : adjacency) {
    if (seen.contains(start)) continue;
    std::vector<NodeId> component;
    std::vector<NodeId> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
      NodeId n = stack.back();
      stack.pop_back();
      component.push_back(n);
      for (NodeId m : adjacency[n]) {
        if (seen.insert(m).second) stack.push_back(m);
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  return components;
}

inline std::vector<std::vector<NodeId>> weakly_connected_components(
    const GasNetwork& network) {
  std::vector<NodeId> nodes;
  for (const auto& [id, n] : network.nodes()) nodes.push_back(id);
  auto keys = network.edge_keys();
  return weakly_connected_components(nodes, keys);
}

inline std::vector<std::string> GasNetwork::check(std::span<const Node> nodes,
                                                  std::span<const PipeEdge> edges,
                                                  NodeId source) {
  std::vector<std::string> problems;
  std::set<NodeId> ids;
  for (const auto& n : nodes) {
    if (!ids.insert(n.id).second)
      problems.push_back("duplicate node " + std::to_string(n.id.value));
  }
  if (!ids.contains(source))
    problems.push_back("source node " + std::to_string(source.value) + " is not in the network");
  std::set<EdgeKey> keys;
  std::vector<EdgeKey> usable;
  for (const auto& e : edges) {
    const std::string name = "edge " + to_string(e.key);
    if (!keys.insert(e.key).second) problems.push_back("duplicate " + name);
    if (e.key.tail == e.key.head) problems.push_back(name + " is a self-loop");
    if (!ids.contains(e.key.tail) || !ids.contains(e.key.head))
      problems.push_back(name + " references a missing node");
    if (!(e.length > 0.0)) problems.push_back(name + " has non-positive length");
    if (e.service_lengths.size() != e.households.size())
      problems.push_back(name + " has " + std::to_string(e.service_lengths.size()) +
                         " service lengths for " + std::to_string(e.households.size()) +
                         " households");
    for (double s : e.service_lengths) {
      if (!(s >= 0.0)) {
        problems.push_back(name + " has a negative service length");
        break;
      }
    }
    usable.push_back(e.key);
  }
  std::vector<NodeId> node_list(ids.begin(), ids.end());
  auto components = weakly_connected_components(node_list, usable);
  if (components.size() > 1) {
    for (const auto& c : components) {
      if (std::binary_search(c.begin(), c.end(), source)) continue;
      problems.push_back("network is not weakly connected: node " +
                         std::to_string(c.front().value) + " (component of " +
                         std::to_string(c.size()) + " nodes) is unreachable from the source");
    }
  }
  return problems;
}

// Nodes cut off from the source when `edge` is removed; empty when the
// removal keeps the network weakly connected.
inline std::set<NodeId> downstream_component(const GasNetwork& network,
                                             const EdgeKey& edge) {
  if (!network.has_edge(edge)) throw InvalidReference("unknown edge " + to_string(edge));
  std::set<NodeId> reached{network.source()};
  std::vector<NodeId> frontier{network.source()};
  while (!frontier.empty()) {
    NodeId n = frontier.back();
    frontier.pop_back();
    for (const EdgeKey& k : network.incident(n)) {
      if (k == edge) continue;
      NodeId other = k.tail == n ? k.head : k.tail;
      if (reached.insert(other).second) frontier.push_back(other);
    }
  }
  std::set<NodeId> cut;
  for (const auto& [id, node] : network.nodes()) {
    if (!reached.contains(id)) cut.insert(id);
  }
  return cut;
}

// Downstream node set for every edge at once, via a single lowpoint DFS
// from the source. Non-bridge edges map to an empty vector. Node vectors
// are sorted.
inline std::map<EdgeKey, std::vector<NodeId>> all_downstream_components(
    const GasNetwork& network) {
  std::map<EdgeKey, std::vector<NodeId>> result;
  for (const auto& [k, e] : network.edges()) result.emplace(k, std::vector<NodeId>{});

  std::map<NodeId, int> order;  // preorder index
  std::vector<NodeId> preorder;
  std::vector<int> low;
  std::vector<int> subtree_end;  // exclusive preorder bound

  struct Frame {
    NodeId node;
    const EdgeKey* parent_edge;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;
  auto visit = [&](NodeId n, const EdgeKey* via) {
    order.emplace(n, static_cast<int>(preorder.size()));
    preorder.push_back(n);
    low.push_back(static_cast<int>(preorder.size()) - 1);
    subtree_end.push_back(0);
    stack.push_back({n, via});
  };
  visit(network.source(), nullptr);
  while (!stack.empty()) {
    Frame& f = stack.back();
    const int fi = order.at(f.node);
    auto incident = network.incident(f.node);
    if (f.next < incident.size()) {
      const EdgeKey& k = incident[f.next++];
      if (f.parent_edge != nullptr && k == *f.parent_edge) continue;
      NodeId other = k.tail == f.node ? k.head : k.tail;
      auto it = order.find(other);
      if (it == order.end()) {
        visit(other, &k);
      } else {
        low[fi] = std::min(low[fi], it->second);
      }
      continue;
    }
    subtree_end[fi] = static_cast<int>(preorder.size());
    const EdgeKey* via = f.parent_edge;
    stack.pop_back();
    if (via == nullptr) continue;
    const int pi = order.at(stack.back().node);
    low[pi] = std::min(low[pi], low[fi]);
    if (low[fi] > pi) {
      std::vector<NodeId> cut(preorder.begin() + fi, preorder.begin() + subtree_end[fi]);
      std::sort(cut.begin(), cut.end());
      result[*via] = std::move(cut);
    }
  }
  return result;
}

}  // namespace heatnet

#endif  // HEATNET_NETWORK_HPP_
