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

#ifndef HEATNET_SCENARIO_IO_HPP_
#define HEATNET_SCENARIO_IO_HPP_

#include <cstdint>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "heatnet/costs.hpp"
#include "heatnet/scenario.hpp"
#include "heatnet/synthetic.hpp"
#include "heatnet/types.hpp"

namespace heatnet {

using json = nlohmann::ordered_json;

inline constexpr int kScenarioFormatVersion = 1;

namespace io {

// Typed field access that reports the JSON path of whatever is wrong.
class Reader {
 public:
  Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {}

  const json& node() const { return node_; }
  const std::string& path() const { return path_; }

  bool has(const char* key) const { return node_.is_object() && node_.contains(key); }

  Reader at(const char* key) const {
    if (!node_.is_object()) fail("expected an object");
    auto it = node_.find(key);
    if (it == node_.end()) throw ParseError(path_ + "." + key + ": missing field");
    return Reader(*it, path_ + "." + key);
  }

  Reader at(std::size_t i) const { return Reader(node_.at(i), path_ + "[" + std::to_string(i) + "]"); }

  std::size_t size() const {
    if (!node_.is_array()) fail("expected an array");
    return node_.size();
  }

  double number() const {
    if (!node_.is_number()) fail("expected a number");
    return node_.get<double>();
  }

  std::int64_t integer() const {
    if (!node_.is_number_integer()) fail("expected an integer");
    return node_.get<std::int64_t>();
  }

  bool boolean() const {
    if (!node_.is_boolean()) fail("expected a boolean");
    return node_.get<bool>();
  }

  std::string string() const {
    if (!node_.is_string()) fail("expected a string");
    return node_.get<std::string>();
  }

  std::vector<double> numbers() const {
    std::vector<double> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).number());
    return out;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(path_ + ": " + what); }

 private:
  const json& node_;
  std::string path_;
};

inline json parse_text(const std::string& text, const std::string& name) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(name + ": " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("failed writing " + path);
}

// 64-bit FNV-1a, used to tie plan files to the scenario they came from.
inline std::string digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

inline json to_json(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

// Single named-profile series serialize as {"shape", scale_field}; anything
// else is written out slot by slot.
inline json series_to_json(const LoadSeries& s, const char* scale_field) {
  if (s.terms().size() == 1 && s.terms()[0].profile->named()) {
    json j;
    j["shape"] = s.terms()[0].profile->key();
    j[scale_field] = s.terms()[0].scale;
    return j;
  }
  return to_json(s.materialize());
}

inline LoadSeries series_from_json(const Reader& r, const char* scale_field,
                                   const std::string& explicit_key) {
  if (r.node().is_array()) {
    auto values = r.numbers();
    if (values.size() != kHoursPerYear)
      r.fail("expected " + std::to_string(kHoursPerYear) + " hourly values, got " +
             std::to_string(values.size()));
    return LoadSeries::explicit_series(explicit_key, std::move(values));
  }
  const std::string shape = r.at("shape").string();
  ProfilePtr profile = named_profile(shape);
  if (!profile) r.at("shape").fail("unknown shape '" + shape + "'");
  const double scale = r.at(scale_field).number();
  if (!(scale >= 0.0)) r.at(scale_field).fail("must be >= 0");
  return LoadSeries(profile, scale);
}

}  // namespace io

// ---------------------------------------------------------------------------
// Constants block. Every field is optional on input; absent fields keep
// their defaults.

inline json to_json(const CostBook& book) {
  const auto& k = book.constants;
  json j;
  j["co2_per_ccf"] = k.co2_per_ccf;
  j["furnace_efficiency"] = k.furnace_efficiency;
  j["cop"] = k.cop;
  j["btu_per_ccf"] = k.btu_per_ccf;
  j["kwh_per_btu"] = k.kwh_per_btu;
  j["power_factor"] = k.power_factor;
  j["median_annual_gas"] = k.median_annual_gas;
  j["ashp_median_cost"] = k.ashp_median_cost;
  j["maintenance_rate"] = k.maintenance_rate;
  j["maintenance_multiplier"] = k.maintenance_multiplier;
  j["pole_top_denominations"] = io::to_json(book.pole_top.denominations);
  j["pole_top_cost_min"] = book.pole_top.cost_min;
  j["pole_top_cost_max"] = book.pole_top.cost_max;
  j["pad_mount_denominations"] = io::to_json(book.pad_mount.denominations);
  j["pad_mount_cost_min"] = book.pad_mount.cost_min;
  j["pad_mount_cost_max"] = book.pad_mount.cost_max;
  return j;
}

// Applies one named constant; returns false when the key is unknown.
inline bool set_constant(CostBook& book, const std::string& key, double value) {
  auto& k = book.constants;
  if (key == "co2_per_ccf") k.co2_per_ccf = value;
  else if (key == "furnace_efficiency") k.furnace_efficiency = value;
  else if (key == "cop") k.cop = value;
  else if (key == "btu_per_ccf") k.btu_per_ccf = value;
  else if (key == "kwh_per_btu") k.kwh_per_btu = value;
  else if (key == "power_factor") k.power_factor = value;
  else if (key == "median_annual_gas") k.median_annual_gas = value;
  else if (key == "ashp_median_cost") k.ashp_median_cost = value;
  else if (key == "maintenance_rate") k.maintenance_rate = value;
  else if (key == "maintenance_multiplier") k.maintenance_multiplier = value;
  else if (key == "pole_top_cost_min") book.pole_top.cost_min = value;
  else if (key == "pole_top_cost_max") book.pole_top.cost_max = value;
  else if (key == "pad_mount_cost_min") book.pad_mount.cost_min = value;
  else if (key == "pad_mount_cost_max") book.pad_mount.cost_max = value;
  else return false;
  return true;
}

inline CostBook cost_book_from_json(const io::Reader& r, CostBook book = {}) {
  if (!r.node().is_object()) r.fail("expected an object");
  for (const auto& [key, value] : r.node().items()) {
    io::Reader field = r.at(key.c_str());
    if (key == "pole_top_denominations") {
      book.pole_top.denominations = field.numbers();
    } else if (key == "pad_mount_denominations") {
      book.pad_mount.denominations = field.numbers();
    } else if (!set_constant(book, key, field.number())) {
      field.fail("unknown constant");
    }
  }
  return book;
}

// ---------------------------------------------------------------------------
// Scenario documents.

inline json to_json(const Scenario& s) {
  json j;
  j["format_version"] = kScenarioFormatVersion;
  j["provenance"] = s.provenance();
  j["source"] = s.network().source().value;

  json nodes = json::array();
  for (const auto& [id, n] : s.network().nodes())
    nodes.push_back({{"id", id.value}, {"x", n.location.x}, {"y", n.location.y}});
  j["nodes"] = std::move(nodes);

  json edges = json::array();
  for (const auto& [k, e] : s.network().edges()) {
    json households = json::array();
    for (HouseholdId h : e.households) households.push_back(h.value);
    edges.push_back({{"tail", k.tail.value},
                     {"head", k.head.value},
                     {"index", k.parallel},
                     {"length", e.length},
                     {"households", std::move(households)},
                     {"service_lengths", io::to_json(e.service_lengths)},
                     {"annual_maintenance", e.annual_maintenance}});
  }
  j["edges"] = std::move(edges);

  json households = json::array();
  for (const auto& [id, h] : s.households()) {
    households.push_back({{"id", id.value},
                          {"x", h.location.x},
                          {"y", h.location.y},
                          {"annual_gas", h.annual_gas},
                          {"hourly_gas", io::series_to_json(h.hourly_gas, "annual")},
                          {"transformer", h.transformer.value},
                          {"income_group", std::string(to_string(h.income_group))},
                          {"converted", h.converted}});
  }
  j["households"] = std::move(households);

  json transformers = json::array();
  for (const auto& [id, t] : s.transformers()) {
    json served = json::array();
    for (HouseholdId h : t.served_households) served.push_back(h.value);
    transformers.push_back({{"id", id.value},
                            {"capacity_kva", t.capacity_kva},
                            {"baseline_load", io::series_to_json(t.baseline_load, "peak")},
                            {"served_households", std::move(served)}});
  }
  j["transformers"] = std::move(transformers);
  j["constants"] = to_json(s.costs());
  return j;
}

inline std::string scenario_text(const Scenario& s) { return to_json(s).dump(1) + "\n"; }

// Parses a scenario document without checking cross-references; field-level
// problems raise ParseError naming the field.
inline ScenarioParts scenario_parts_from_text(const std::string& text,
                                              const std::string& name = "scenario") {
  const json doc = io::parse_text(text, name);
  io::Reader root(doc, name);
  if (!doc.is_object()) root.fail("expected an object");
  const auto version = root.at("format_version").integer();
  if (version != kScenarioFormatVersion)
    root.at("format_version").fail("unsupported version " + std::to_string(version));

  ScenarioParts p;
  if (root.has("provenance")) p.provenance = root.at("provenance").string();
  p.source = NodeId(root.at("source").integer());

  auto nodes = root.at("nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto n = nodes.at(i);
    Point loc{n.at("x").number(), n.at("y").number()};
    if (!std::isfinite(loc.x) || !std::isfinite(loc.y)) n.fail("non-finite coordinates");
    p.nodes.push_back({NodeId(n.at("id").integer()), loc});
  }

  auto edges = root.at("edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto e = edges.at(i);
    PipeEdge pe;
    pe.key = {NodeId(e.at("tail").integer()), NodeId(e.at("head").integer()),
              static_cast<int>(e.has("index") ? e.at("index").integer() : 0)};
    pe.length = e.at("length").number();
    if (!(pe.length > 0.0)) e.at("length").fail("must be positive");
    auto hh = e.at("households");
    for (std::size_t k = 0; k < hh.size(); ++k) pe.households.emplace_back(hh.at(k).integer());
    pe.service_lengths = e.at("service_lengths").numbers();
    for (double s : pe.service_lengths)
      if (!(s >= 0.0)) e.at("service_lengths").fail("entries must be >= 0");
    if (e.has("annual_maintenance")) pe.annual_maintenance = e.at("annual_maintenance").number();
    p.edges.push_back(std::move(pe));
  }

  auto households = root.at("households");
  for (std::size_t i = 0; i < households.size(); ++i) {
    auto r = households.at(i);
    Household h;
    h.id = HouseholdId(r.at("id").integer());
    h.location = {r.at("x").number(), r.at("y").number()};
    h.annual_gas = r.at("annual_gas").number();
    if (!(h.annual_gas >= 0.0)) r.at("annual_gas").fail("must be >= 0");
    h.hourly_gas = io::series_from_json(r.at("hourly_gas"), "annual",
                                        "household:" + std::to_string(h.id.value));
    h.transformer = TransformerId(r.at("transformer").integer());
    auto g = parse_income_group(r.at("income_group").string());
    if (!g) r.at("income_group").fail("expected low, medium or high");
    h.income_group = *g;
    if (r.has("converted")) h.converted = r.at("converted").boolean();
    p.households.push_back(std::move(h));
  }

  auto transformers = root.at("transformers");
  for (std::size_t i = 0; i < transformers.size(); ++i) {
    auto r = transformers.at(i);
    Transformer t;
    t.id = TransformerId(r.at("id").integer());
    t.capacity_kva = r.at("capacity_kva").number();
    if (!(t.capacity_kva > 0.0)) r.at("capacity_kva").fail("must be positive");
    t.baseline_load = io::series_from_json(r.at("baseline_load"), "peak",
                                           "transformer:" + std::to_string(t.id.value));
    auto served = r.at("served_households");
    for (std::size_t k = 0; k < served.size(); ++k)
      t.served_households.emplace_back(served.at(k).integer());
    p.transformers.push_back(std::move(t));
  }

  if (root.has("constants")) p.costs = cost_book_from_json(root.at("constants"));
  if (!(root.has("constants") && root.at("constants").has("median_annual_gas"))) {
    std::vector<double> usage;
    for (const auto& h : p.households) usage.push_back(h.annual_gas);
    p.costs.constants.median_annual_gas = median_annual_gas(usage);
  }
  return p;
}

inline Scenario scenario_from_text(const std::string& text, const std::string& name = "scenario") {
  return Scenario(scenario_parts_from_text(text, name));
}

inline void write_scenario(const Scenario& s, const std::string& path) {
  io::write_file(path, scenario_text(s));
}

inline Scenario read_scenario(const std::string& path) {
  return scenario_from_text(io::read_file(path), path);
}

// ---------------------------------------------------------------------------
// Synthetic-city parameter files: a JSON object whose keys mirror
// SyntheticCityParams; absent keys keep their defaults.

inline SyntheticCityParams synthetic_params_from_text(const std::string& text,
                                                      const std::string& name = "params") {
  const json doc = io::parse_text(text, name);
  io::Reader root(doc, name);
  if (!doc.is_object()) root.fail("expected an object");
  SyntheticCityParams p;
  auto triple = [](const io::Reader& r) {
    auto v = r.numbers();
    if (v.size() != 3) r.fail("expected 3 entries (low, medium, high)");
    return std::array<double, 3>{v[0], v[1], v[2]};
  };
  auto int_triple = [](const io::Reader& r) {
    if (r.size() != 3) r.fail("expected 3 entries (low, medium, high)");
    return std::array<int, 3>{static_cast<int>(r.at(std::size_t{0}).integer()),
                              static_cast<int>(r.at(1).integer()),
                              static_cast<int>(r.at(2).integer())};
  };
  for (const auto& [key, value] : doc.items()) {
    io::Reader f = root.at(key.c_str());
    if (key == "blocks_x") p.blocks_x = static_cast<int>(f.integer());
    else if (key == "blocks_y") p.blocks_y = static_cast<int>(f.integer());
    else if (key == "block_length") p.block_length = f.number();
    else if (key == "length_jitter") p.length_jitter = f.number();
    else if (key == "households_per_block") p.households_per_block = triple(f);
    else if (key == "usage_scale") p.usage_scale = triple(f);
    else if (key == "low_median_usage") p.low_median_usage = f.number();
    else if (key == "usage_dispersion") p.usage_dispersion = f.number();
    else if (key == "tract_divisions") p.tract_divisions = static_cast<int>(f.integer());
    else if (key == "min_households_per_transformer")
      p.min_households_per_transformer = int_triple(f);
    else if (key == "max_households_per_transformer")
      p.max_households_per_transformer = int_triple(f);
    else if (key == "transformer_sizes") p.transformer_sizes = f.numbers();
    else if (key == "min_household_kva") p.min_household_kva = f.number();
    else if (key == "max_household_kva") p.max_household_kva = f.number();
    else if (key == "min_utilization") p.min_utilization = f.number();
    else if (key == "max_utilization") p.max_utilization = f.number();
    else if (key == "setback_min") p.setback_min = f.number();
    else if (key == "setback_max") p.setback_max = f.number();
    else if (key == "setback_scale") p.setback_scale = triple(f);
    else if (key == "radial_tracts") p.radial_tracts = f.boolean();
    else if (key == "annual_maintenance_spend") p.annual_maintenance_spend = f.number();
    else if (key == "seed") p.seed = static_cast<std::uint64_t>(f.integer());
    else f.fail("unknown parameter");
  }
  auto problems = p.violations();
  if (!problems.empty()) throw ValidationError(std::move(problems));
  return p;
}

}  // namespace heatnet

#endif  // HEATNET_SCENARIO_IO_HPP_
