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

#ifndef HEATNET_INGEST_HPP_
#define HEATNET_INGEST_HPP_

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "heatnet/costs.hpp"
#include "heatnet/load_series.hpp"
#include "heatnet/network.hpp"
#include "heatnet/scenario.hpp"
#include "heatnet/types.hpp"

namespace heatnet {

struct RoadNode {
  NodeId id;
  Point location;
};

struct RoadSegment {
  std::int64_t id = 0;
  NodeId a;
  NodeId b;
  double length = 0.0;  // meters
  std::string road_class;
};

// Undirected road network in a local planar frame (meters).
struct RoadGraph {
  std::vector<RoadNode> nodes;
  std::vector<RoadSegment> segments;

  std::vector<std::string> violations() const {
    std::vector<std::string> out;
    std::set<NodeId> ids;
    for (const auto& n : nodes) {
      if (!ids.insert(n.id).second)
        out.push_back("duplicate road node " + std::to_string(n.id.value));
      if (!std::isfinite(n.location.x) || !std::isfinite(n.location.y))
        out.push_back("road node " + std::to_string(n.id.value) + " has non-finite coordinates");
    }
    for (const auto& s : segments) {
      if (!(s.length > 0.0))
        out.push_back("road segment " + std::to_string(s.id) + " has non-positive length");
      if (!ids.contains(s.a) || !ids.contains(s.b))
        out.push_back("road segment " + std::to_string(s.id) + " references a missing node");
    }
    return out;
  }
};

inline const std::vector<std::string>& default_excluded_road_classes() {
  static const std::vector<std::string> classes{"motorway"};
  return classes;
}

namespace detail {

// Two path lengths are treated as equal within this relative tolerance, so
// equal-length routes summed in different orders still tie.
inline bool same_length(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace detail

// Keeps exactly the road segments lying on at least one shortest path from
// `source`, directed away from it, and drops nodes the source cannot reach.
// Segments whose class is in `excluded_classes` are removed first.
inline GasNetwork prune_to_shortest_paths(
    const RoadGraph& road, NodeId source,
    const std::vector<std::string>& excluded_classes = default_excluded_road_classes()) {
  auto problems = road.violations();
  if (!problems.empty()) throw ValidationError(std::move(problems));

  std::map<NodeId, Point> location;
  for (const auto& n : road.nodes) location.emplace(n.id, n.location);
  if (!location.contains(source))
    throw InvalidReference("source node " + std::to_string(source.value) +
                           " is not in the road graph");

  std::vector<const RoadSegment*> usable;
  for (const auto& s : road.segments) {
    if (s.a == s.b) continue;
    if (std::find(excluded_classes.begin(), excluded_classes.end(), s.road_class) !=
        excluded_classes.end())
      continue;
    usable.push_back(&s);
  }
  std::sort(usable.begin(), usable.end(),
            [](const RoadSegment* x, const RoadSegment* y) { return x->id < y->id; });

  std::map<NodeId, std::vector<std::pair<NodeId, double>>> adjacency;
  for (const RoadSegment* s : usable) {
    adjacency[s->a].emplace_back(s->b, s->length);
    adjacency[s->b].emplace_back(s->a, s->length);
  }

  std::map<NodeId, double> dist;
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[source] = 0.0;
  queue.emplace(0.0, source);
  while (!queue.empty()) {
    auto [d, n] = queue.top();
    queue.pop();
    if (d > dist[n]) continue;
    for (const auto& [m, len] : adjacency[n]) {
      const double nd = d + len;
      auto it = dist.find(m);
      if (it == dist.end() || nd < it->second) {
        dist[m] = nd;
        queue.emplace(nd, m);
      }
    }
  }

  std::vector<Node> nodes;
  for (const auto& [id, d] : dist) nodes.push_back({id, location.at(id)});

  std::map<std::pair<NodeId, NodeId>, int> parallel;
  std::vector<PipeEdge> edges;
  for (const RoadSegment* s : usable) {
    auto da = dist.find(s->a);
    auto db = dist.find(s->b);
    if (da == dist.end() || db == dist.end()) continue;
    NodeId tail, head;
    if (detail::same_length(da->second + s->length, db->second)) {
      tail = s->a;
      head = s->b;
    } else if (detail::same_length(db->second + s->length, da->second)) {
      tail = s->b;
      head = s->a;
    } else {
      continue;
    }
    PipeEdge e;
    e.key = {tail, head, parallel[{tail, head}]++};
    e.length = s->length;
    edges.push_back(std::move(e));
  }
  return GasNetwork(std::move(nodes), std::move(edges), source);
}

// Re-derives a road graph from a network (used to check idempotence).
inline RoadGraph to_road_graph(const GasNetwork& network) {
  RoadGraph g;
  for (const auto& [id, n] : network.nodes()) g.nodes.push_back({id, n.location});
  std::int64_t next = 0;
  for (const auto& [k, e] : network.edges())
    g.segments.push_back({next++, k.tail, k.head, e.length, "residential"});
  return g;
}

inline double point_segment_distance(Point p, Point a, Point b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double cx = a.x + t * dx - p.x;
  const double cy = a.y + t * dy - p.y;
  return std::hypot(cx, cy);
}

// Attaches every household to its geometrically nearest edge, recording the
// distance as its service-line length. Ties go to the smallest edge key.
// Existing attachments are discarded.
inline GasNetwork assign_meters(const GasNetwork& network,
                                const std::vector<Household>& households) {
  if (network.edges().empty())
    throw ValidationError({"cannot assign meters: network has no edges"});

  struct Segment {
    EdgeKey key;
    Point a, b;
  };
  std::vector<Segment> segments;
  for (const auto& [k, e] : network.edges())
    segments.push_back({k, network.node(k.tail).location, network.node(k.head).location});

  std::map<EdgeKey, std::vector<std::pair<HouseholdId, double>>> attached;
  for (const auto& h : households) {
    const Segment* best = nullptr;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& s : segments) {
      const double d = point_segment_distance(h.location, s.a, s.b);
      if (d < best_d) {
        best_d = d;
        best = &s;
      }
    }
    attached[best->key].emplace_back(h.id, best_d);
  }

  std::vector<PipeEdge> edges;
  for (const auto& [k, e] : network.edges()) {
    PipeEdge copy = e;
    copy.households.clear();
    copy.service_lengths.clear();
    auto it = attached.find(k);
    if (it != attached.end()) {
      std::sort(it->second.begin(), it->second.end());
      for (const auto& [id, d] : it->second) {
        copy.households.push_back(id);
        copy.service_lengths.push_back(d);
      }
    }
    edges.push_back(std::move(copy));
  }
  return network.with_edge_payloads(std::move(edges));
}

// ---------------------------------------------------------------------------
// Delimited-text readers.

namespace detail {

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    auto b = field.find_first_not_of(" \t\r");
    auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline double parse_double(const std::string& s, const std::string& where) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(where + ": expected a number, got '" + s + "'");
  }
}

inline std::int64_t parse_int(const std::string& s, const std::string& where) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(where + ": expected an integer, got '" + s + "'");
  }
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return in;
}

}  // namespace detail

// Road graph text: a node table headed `id,x,y` followed by a segment table
// headed `id,a,b,length,class`. Blank lines and `#` comments are skipped.
inline RoadGraph read_road_graph(std::istream& in, const std::string& name = "road graph") {
  RoadGraph g;
  enum class Section { kNone, kNodes, kSegments } section = Section::kNone;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = name + " line " + std::to_string(line_no);
    auto fields = detail::split_csv(line);
    if (fields.empty() || fields[0].empty() || fields[0][0] == '#') continue;
    if (fields == std::vector<std::string>{"id", "x", "y"}) {
      section = Section::kNodes;
      continue;
    }
    if (fields == std::vector<std::string>{"id", "a", "b", "length", "class"}) {
      section = Section::kSegments;
      continue;
    }
    switch (section) {
      case Section::kNone:
        throw ParseError(where + ": expected header 'id,x,y' or 'id,a,b,length,class'");
      case Section::kNodes:
        if (fields.size() != 3) throw ParseError(where + ": node rows have 3 fields");
        g.nodes.push_back({NodeId(detail::parse_int(fields[0], where + " field id")),
                           {detail::parse_double(fields[1], where + " field x"),
                            detail::parse_double(fields[2], where + " field y")}});
        break;
      case Section::kSegments: {
        if (fields.size() != 5) throw ParseError(where + ": segment rows have 5 fields");
        RoadSegment s{detail::parse_int(fields[0], where + " field id"),
                      NodeId(detail::parse_int(fields[1], where + " field a")),
                      NodeId(detail::parse_int(fields[2], where + " field b")),
                      detail::parse_double(fields[3], where + " field length"), fields[4]};
        if (!(s.length > 0.0)) throw ParseError(where + " field length: must be positive");
        g.segments.push_back(std::move(s));
        break;
      }
    }
  }
  return g;
}

inline RoadGraph read_road_graph(const std::string& path) {
  auto in = detail::open_input(path);
  return read_road_graph(in, path);
}

// Household table `id,x,y,annual_gas,transformer,income_group`; hourly usage
// is spread with the winter-peaked shape.
inline std::vector<Household> read_households(std::istream& in,
                                              const std::string& name = "households") {
  std::vector<Household> out;
  std::string line;
  int line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = name + " line " + std::to_string(line_no);
    auto f = detail::split_csv(line);
    if (f.empty() || f[0].empty() || f[0][0] == '#') continue;
    if (!header) {
      if (f != std::vector<std::string>{"id", "x", "y", "annual_gas", "transformer",
                                         "income_group"})
        throw ParseError(where + ": expected header id,x,y,annual_gas,transformer,income_group");
      header = true;
      continue;
    }
    if (f.size() != 6) throw ParseError(where + ": household rows have 6 fields");
    Household h;
    h.id = HouseholdId(detail::parse_int(f[0], where + " field id"));
    h.location = {detail::parse_double(f[1], where + " field x"),
                  detail::parse_double(f[2], where + " field y")};
    h.annual_gas = detail::parse_double(f[3], where + " field annual_gas");
    if (!(h.annual_gas >= 0.0)) throw ParseError(where + " field annual_gas: must be >= 0");
    h.hourly_gas = LoadSeries(winter_peaked_profile(), h.annual_gas);
    h.transformer = TransformerId(detail::parse_int(f[4], where + " field transformer"));
    auto g = parse_income_group(f[5]);
    if (!g) throw ParseError(where + " field income_group: expected low, medium or high");
    h.income_group = *g;
    out.push_back(std::move(h));
  }
  return out;
}

// Transformer table `id,capacity_kva,baseline_peak_kva`; the baseline uses
// the residential shape scaled to the given peak.
inline std::vector<Transformer> read_transformers(std::istream& in,
                                                  const std::string& name = "transformers") {
  std::vector<Transformer> out;
  std::string line;
  int line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = name + " line " + std::to_string(line_no);
    auto f = detail::split_csv(line);
    if (f.empty() || f[0].empty() || f[0][0] == '#') continue;
    if (!header) {
      if (f != std::vector<std::string>{"id", "capacity_kva", "baseline_peak_kva"})
        throw ParseError(where + ": expected header id,capacity_kva,baseline_peak_kva");
      header = true;
      continue;
    }
    if (f.size() != 3) throw ParseError(where + ": transformer rows have 3 fields");
    Transformer t;
    t.id = TransformerId(detail::parse_int(f[0], where + " field id"));
    t.capacity_kva = detail::parse_double(f[1], where + " field capacity_kva");
    const double peak = detail::parse_double(f[2], where + " field baseline_peak_kva");
    if (!(peak >= 0.0)) throw ParseError(where + " field baseline_peak_kva: must be >= 0");
    t.baseline_load = LoadSeries(residential_baseline_profile(), peak);
    out.push_back(std::move(t));
  }
  return out;
}

struct IngestOptions {
  NodeId source;
  std::vector<std::string> excluded_classes = default_excluded_road_classes();
  double annual_maintenance_spend = 0.0;  // city-wide, currency per year
  PhysicalConstants constants;
};

// Road graph + meters + transformers -> validated scenario. Median usage and
// the maintenance rate are derived from the data.
inline Scenario ingest_scenario(const RoadGraph& road, std::vector<Household> households,
                                std::vector<Transformer> transformers,
                                const IngestOptions& options) {
  GasNetwork network = prune_to_shortest_paths(road, options.source, options.excluded_classes);
  if (!households.empty()) network = assign_meters(network, households);

  std::map<TransformerId, Transformer*> by_id;
  for (auto& t : transformers) {
    t.served_households.clear();
    by_id[t.id] = &t;
  }
  std::vector<double> usage;
  for (const auto& h : households) {
    usage.push_back(h.annual_gas);
    auto it = by_id.find(h.transformer);
    if (it != by_id.end()) it->second->served_households.push_back(h.id);
  }
  for (auto& t : transformers)
    std::sort(t.served_households.begin(), t.served_households.end());

  CostBook book;
  book.constants = options.constants;
  book.constants.median_annual_gas = median_annual_gas(usage);
  book.constants.maintenance_rate =
      maintenance_rate_for(network, options.annual_maintenance_spend);
  network = derive_maintenance(network, book.constants);

  ScenarioParts parts;
  parts.source = network.source();
  for (const auto& [id, n] : network.nodes()) parts.nodes.push_back(n);
  for (const auto& [k, e] : network.edges()) parts.edges.push_back(e);
  parts.households = std::move(households);
  parts.transformers = std::move(transformers);
  parts.costs = book;
  parts.provenance = "ingested";
  return Scenario(std::move(parts));
}

}  // namespace heatnet

#endif  // HEATNET_INGEST_HPP_
