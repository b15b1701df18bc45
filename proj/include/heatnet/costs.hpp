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

#ifndef HEATNET_COSTS_HPP_
#define HEATNET_COSTS_HPP_

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "heatnet/load_series.hpp"
#include "heatnet/network.hpp"
#include "heatnet/types.hpp"

namespace heatnet {

// Physical and economic constants. Every value is overridable from the
// scenario file's constants block.
struct PhysicalConstants {
  double co2_per_ccf = 0.00551;      // tCO2 per CCF burned (net of grid carbon)
  double furnace_efficiency = 0.875;
  double cop = 2.5;
  double btu_per_ccf = 103700.0;     // U.S. average heat content
  double kwh_per_btu = 0.000293071;
  double power_factor = 1.0;         // kVA = kW / power_factor
  double median_annual_gas = 0.0;    // CCF/year, from the scenario
  double ashp_median_cost = 15000.0;
  double maintenance_rate = 0.0;     // currency per meter per year
  double maintenance_multiplier = 1.0;

  std::vector<std::string> violations() const {
    std::vector<std::string> out;
    auto positive = [&](std::string_view name, double v) {
      if (!(v > 0.0) || !std::isfinite(v))
        out.push_back("constant " + std::string(name) + " must be positive");
    };
    positive("co2_per_ccf", co2_per_ccf);
    positive("furnace_efficiency", furnace_efficiency);
    if (furnace_efficiency > 1.0) out.push_back("constant furnace_efficiency must be <= 1");
    positive("cop", cop);
    positive("btu_per_ccf", btu_per_ccf);
    positive("kwh_per_btu", kwh_per_btu);
    positive("power_factor", power_factor);
    if (power_factor > 1.0) out.push_back("constant power_factor must be <= 1");
    if (!(median_annual_gas >= 0.0)) out.push_back("constant median_annual_gas must be >= 0");
    positive("ashp_median_cost", ashp_median_cost);
    if (!(maintenance_rate >= 0.0)) out.push_back("constant maintenance_rate must be >= 0");
    positive("maintenance_multiplier", maintenance_multiplier);
    return out;
  }

  friend bool operator==(const PhysicalConstants&, const PhysicalConstants&) = default;
};

// One transformer family: its purchasable sizes and the cost span between
// the smallest and the largest size.
struct TransformerFamily {
  std::vector<double> denominations;  // kVA, ascending
  double cost_min = 0.0;
  double cost_max = 0.0;

  double largest() const { return denominations.back(); }

  // Linear in kVA between the family's extreme sizes.
  double unit_cost(double kva) const {
    const double lo = denominations.front();
    const double hi = denominations.back();
    if (hi == lo) return cost_min;
    return cost_min + (cost_max - cost_min) * (kva - lo) / (hi - lo);
  }

  // Smallest denomination >= need; stacks full-size units first when the
  // need exceeds the largest size.
  std::vector<double> units_for(double need) const {
    std::vector<double> units;
    while (need > largest()) {
      units.push_back(largest());
      need -= largest();
    }
    if (need > 0.0 || units.empty()) {
      units.push_back(*std::lower_bound(denominations.begin(), denominations.end(), need));
    }
    return units;
  }

  friend bool operator==(const TransformerFamily&, const TransformerFamily&) = default;
};

struct CostBook {
  PhysicalConstants constants;
  TransformerFamily pole_top{{15.0, 25.0, 37.5, 50.0, 75.0}, 4225.0, 25525.0};
  TransformerFamily pad_mount{{75.0, 100.0, 150.0, 167.0}, 74900.0, 149800.0};

  // Pole-top units are those rated at or below this size.
  static constexpr double kPoleTopLimit = 75.0;
  // Peak above this multiple of capacity is an overload.
  static constexpr double kOverloadRatio = 1.25;
  static constexpr double kHighUtilizationRatio = 0.90;

  std::vector<std::string> violations() const {
    auto out = constants.violations();
    for (const auto* f : {&pole_top, &pad_mount}) {
      const std::string name = f == &pole_top ? "pole_top" : "pad_mount";
      if (f->denominations.empty()) {
        out.push_back(name + " denominations are empty");
        continue;
      }
      if (!std::is_sorted(f->denominations.begin(), f->denominations.end()) ||
          f->denominations.front() <= 0.0)
        out.push_back(name + " denominations must be positive and ascending");
      if (!(f->cost_min >= 0.0) || !(f->cost_max >= f->cost_min))
        out.push_back(name + " cost range must be nonnegative and ordered");
    }
    return out;
  }

  friend bool operator==(const CostBook&, const CostBook&) = default;
};

inline double gas_to_heat(double ccf, const PhysicalConstants& k) {
  return ccf * k.btu_per_ccf * k.furnace_efficiency;
}

inline double heat_to_electric(double btu, const PhysicalConstants& k) {
  return btu / k.cop * k.kwh_per_btu;
}

inline double carbon_emissions(double ccf, const PhysicalConstants& k) {
  return ccf * k.co2_per_ccf;
}

// kVA drawn per CCF burned in the same hour, once served by a heat pump.
inline double kva_per_ccf(const PhysicalConstants& k) {
  return heat_to_electric(gas_to_heat(1.0, k), k) / k.power_factor;
}

// Hourly heat-pump demand (kVA) replacing an hourly gas series (CCF/h).
inline LoadSeries ashp_electric_adder(const LoadSeries& hourly_gas,
                                      const PhysicalConstants& k) {
  LoadSeries out;
  out.add(hourly_gas, kva_per_ccf(k));
  return out;
}

inline double ashp_install_cost(double annual_gas, const PhysicalConstants& k) {
  if (!(k.median_annual_gas > 0.0))
    throw ConfigError("median_annual_gas must be positive to price heat pumps");
  return k.ashp_median_cost * (annual_gas / k.median_annual_gas);
}

// One year of avoided maintenance for the given mains and their services.
inline double maintenance_savings(std::span<const PipeEdge* const> edges,
                                  const PhysicalConstants& k) {
  double length = 0.0;
  for (const PipeEdge* e : edges) length += e->pipe_length();
  return k.maintenance_multiplier * k.maintenance_rate * length;
}

inline double maintenance_savings(std::span<const PipeEdge> edges,
                                  const PhysicalConstants& k) {
  std::vector<const PipeEdge*> ptrs;
  for (const auto& e : edges) ptrs.push_back(&e);
  return maintenance_savings(std::span<const PipeEdge* const>(ptrs), k);
}

// Per-meter yearly rate that spreads a city's maintenance spend evenly over
// its total pipe length (mains plus services).
inline double maintenance_rate_for(const GasNetwork& network, double annual_spend) {
  double length = 0.0;
  for (const auto& [k, e] : network.edges()) length += e.pipe_length();
  return length > 0.0 ? annual_spend / length : 0.0;
}

// Stamps each edge with its yearly maintenance cost at the given rate.
inline GasNetwork derive_maintenance(const GasNetwork& network, const PhysicalConstants& k) {
  std::vector<PipeEdge> edges;
  for (const auto& [key, e] : network.edges()) {
    PipeEdge copy = e;
    copy.annual_maintenance = e.pipe_length() * k.maintenance_rate;
    edges.push_back(std::move(copy));
  }
  return network.with_edge_payloads(std::move(edges));
}

// ---------------------------------------------------------------------------
// Overloaded transformer upgrade rules.

enum class UpgradeKind {
  kNoAction,
  kUpgradePoleTop,
  kAdditionalPoleTop,
  kReplaceWithPadMount,
  kAdditionalPadMount,
};

inline std::string_view to_string(UpgradeKind k) {
  switch (k) {
    case UpgradeKind::kNoAction:
      return "none";
    case UpgradeKind::kUpgradePoleTop:
      return "upgrade_pole_top";
    case UpgradeKind::kAdditionalPoleTop:
      return "additional_pole_top";
    case UpgradeKind::kReplaceWithPadMount:
      return "replace_with_pad_mount";
    case UpgradeKind::kAdditionalPadMount:
      return "additional_pad_mount";
  }
  return "unknown";
}

struct UpgradeAction {
  UpgradeKind kind = UpgradeKind::kNoAction;
  std::vector<double> purchased_units;  // kVA
  double cost = 0.0;
  // Capacity in service after the action (retained + purchased, or the
  // replacement alone).
  double post_capacity = 0.0;
  // Set when no listed rule matched and the additional pole-top rule was
  // applied as a fallback.
  bool fallback = false;

  friend bool operator==(const UpgradeAction&, const UpgradeAction&) = default;
};

inline bool is_overloaded(double capacity, double peak) {
  return peak > CostBook::kOverloadRatio * capacity;
}

// Rules are tried in their listed order; first match wins.
inline UpgradeAction upgrade_action(double capacity, double peak, const CostBook& book) {
  UpgradeAction a;
  a.post_capacity = capacity;
  if (!is_overloaded(capacity, peak)) return a;

  auto buy = [&](const TransformerFamily& family, double need) {
    a.purchased_units = family.units_for(need);
    a.cost = 0.0;
    double bought = 0.0;
    for (double u : a.purchased_units) {
      a.cost += family.unit_cost(u);
      bought += u;
    }
    return bought;
  };

  const double limit = CostBook::kPoleTopLimit;
  if (peak < 2.0 * capacity && peak <= limit) {
    a.kind = UpgradeKind::kUpgradePoleTop;
    a.post_capacity = buy(book.pole_top, peak);
  } else if (peak > 2.0 * capacity && capacity <= limit) {
    a.kind = UpgradeKind::kAdditionalPoleTop;
    a.post_capacity = capacity + buy(book.pole_top, peak - capacity);
  } else if (peak > 3.0 * capacity && peak > limit) {
    a.kind = UpgradeKind::kReplaceWithPadMount;
    a.post_capacity = buy(book.pad_mount, peak);
  } else if (capacity > limit) {
    a.kind = UpgradeKind::kAdditionalPadMount;
    a.post_capacity = capacity + buy(book.pad_mount, peak - capacity);
  } else {
    a.kind = UpgradeKind::kAdditionalPoleTop;
    a.fallback = true;
    a.post_capacity = capacity + buy(book.pole_top, peak - capacity);
  }
  return a;
}

}  // namespace heatnet

#endif  // HEATNET_COSTS_HPP_
