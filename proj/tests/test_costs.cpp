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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "heatnet/costs.hpp"
#include "support.hpp"

namespace heatnet {
namespace {

PhysicalConstants defaults() {
  PhysicalConstants k;
  k.median_annual_gas = 1000.0;
  return k;
}

TEST(Conversions, GasToHeat) {
  PhysicalConstants k = defaults();
  EXPECT_EQ(gas_to_heat(0.0, k), 0.0);
  EXPECT_DOUBLE_EQ(gas_to_heat(100.0, k), 100.0 * 103700.0 * 0.875);
  EXPECT_DOUBLE_EQ(gas_to_heat(100.0, k), 9073750.0);
  k.furnace_efficiency = 1.0;
  EXPECT_DOUBLE_EQ(gas_to_heat(1.0, k), 103700.0);
}

TEST(Conversions, HeatToElectric) {
  PhysicalConstants k = defaults();
  EXPECT_EQ(heat_to_electric(0.0, k), 0.0);
  EXPECT_NEAR(heat_to_electric(9073750.0, k), 9073750.0 / 2.5 * 0.000293071, 1e-9);
  EXPECT_NEAR(heat_to_electric(9073750.0, k), 1063.7012, 1e-4);
  k.cop = 1.0;
  EXPECT_DOUBLE_EQ(heat_to_electric(1000.0, k), 0.293071);
}

TEST(Conversions, Carbon) {
  PhysicalConstants k = defaults();
  EXPECT_EQ(carbon_emissions(1.0, k), 0.00551);
  EXPECT_EQ(carbon_emissions(0.0, k), 0.0);
  EXPECT_DOUBLE_EQ(carbon_emissions(1000.0, k), 5.51);
}

TEST(Conversions, InstallCostScalesWithUsage) {
  PhysicalConstants k = defaults();
  EXPECT_EQ(ashp_install_cost(1000.0, k), 15000.0);
  EXPECT_EQ(ashp_install_cost(2000.0, k), 30000.0);
  EXPECT_EQ(ashp_install_cost(0.0, k), 0.0);
  k.median_annual_gas = 0.0;
  EXPECT_THROW(ashp_install_cost(10.0, k), ConfigError);
}

TEST(Adder, ZeroGasGivesZeroLoad) {
  PhysicalConstants k = defaults();
  auto adder = ashp_electric_adder(testing::MiniCity::constant_series("z", 0.0), k);
  EXPECT_EQ(adder.peak(), 0.0);
  EXPECT_EQ(adder.total(), 0.0);
}

TEST(Adder, OneCcfInOneHour) {
  PhysicalConstants k = defaults();
  auto adder = ashp_electric_adder(testing::MiniCity::spike("s", 100, 1.0), k);
  EXPECT_NEAR(adder.at(100), 10.63701, 1e-5);
  EXPECT_DOUBLE_EQ(adder.at(100), heat_to_electric(gas_to_heat(1.0, k), k));
  EXPECT_EQ(adder.at(99), 0.0);
}

TEST(Adder, YearlySumMatchesConvertedAnnualUsage) {
  PhysicalConstants k = defaults();
  LoadSeries gas(winter_peaked_profile(), 850.0);
  const double expected = heat_to_electric(gas_to_heat(850.0, k), k);
  EXPECT_NEAR(ashp_electric_adder(gas, k).total(), expected, 1e-9 * expected);
}

TEST(Maintenance, LinearInLength) {
  PhysicalConstants k = defaults();
  k.maintenance_rate = 2.0;
  EXPECT_EQ(maintenance_savings(std::span<const PipeEdge>{}, k), 0.0);
  PipeEdge e;
  e.length = 100.0;
  std::vector<PipeEdge> one{e};
  EXPECT_DOUBLE_EQ(maintenance_savings(one, k), 200.0);
  e.households = {HouseholdId(1), HouseholdId(2)};
  e.service_lengths = {10.0, 15.0};
  std::vector<PipeEdge> with_services{e};
  EXPECT_DOUBLE_EQ(maintenance_savings(with_services, k), 250.0);
  const double base = maintenance_savings(with_services, k);
  k.maintenance_multiplier = 2.0;
  EXPECT_DOUBLE_EQ(maintenance_savings(with_services, k), 2.0 * base);
}

TEST(Family, InterpolatesBetweenExtremes) {
  CostBook book;
  EXPECT_DOUBLE_EQ(book.pole_top.unit_cost(15.0), 4225.0);
  EXPECT_DOUBLE_EQ(book.pole_top.unit_cost(75.0), 25525.0);
  EXPECT_DOUBLE_EQ(book.pole_top.unit_cost(50.0), 4225.0 + 21300.0 * 35.0 / 60.0);
  EXPECT_DOUBLE_EQ(book.pad_mount.unit_cost(75.0), 74900.0);
  EXPECT_DOUBLE_EQ(book.pad_mount.unit_cost(167.0), 149800.0);
}

TEST(Family, StacksLargestUnits) {
  CostBook book;
  EXPECT_EQ(book.pole_top.units_for(40.0), (std::vector<double>{50.0}));
  EXPECT_EQ(book.pole_top.units_for(75.0), (std::vector<double>{75.0}));
  EXPECT_EQ(book.pole_top.units_for(160.0), (std::vector<double>{75.0, 75.0, 15.0}));
  EXPECT_EQ(book.pad_mount.units_for(400.0), (std::vector<double>{167.0, 167.0, 75.0}));
}

TEST(Upgrade, BelowThresholdIsNoAction) {
  CostBook book;
  auto a = upgrade_action(25.0, 30.0, book);
  EXPECT_EQ(a.kind, UpgradeKind::kNoAction);
  EXPECT_EQ(a.cost, 0.0);
  EXPECT_EQ(upgrade_action(25.0, 31.25, book).kind, UpgradeKind::kNoAction);
}

TEST(Upgrade, RuleOneReplacesPoleTop) {
  CostBook book;
  auto a = upgrade_action(25.0, 40.0, book);
  EXPECT_EQ(a.kind, UpgradeKind::kUpgradePoleTop);
  EXPECT_EQ(a.purchased_units, std::vector<double>{50.0});
  EXPECT_DOUBLE_EQ(a.cost, 16650.0);
  EXPECT_EQ(a.post_capacity, 50.0);
  EXPECT_FALSE(a.fallback);
}

TEST(Upgrade, RuleTwoAddsPoleTop) {
  CostBook book;
  auto a = upgrade_action(15.0, 40.0, book);  // 40 > 30
  EXPECT_EQ(a.kind, UpgradeKind::kAdditionalPoleTop);
  EXPECT_EQ(a.purchased_units, std::vector<double>{25.0});
  EXPECT_EQ(a.post_capacity, 40.0);
  EXPECT_DOUBLE_EQ(a.cost, book.pole_top.unit_cost(25.0));
}

TEST(Upgrade, RuleThreeReplacesWithPadMount) {
  CostBook book;
  auto a = upgrade_action(100.0, 320.0, book);
  EXPECT_EQ(a.kind, UpgradeKind::kReplaceWithPadMount);
  EXPECT_EQ(a.purchased_units, (std::vector<double>{167.0, 167.0}));
  EXPECT_EQ(a.post_capacity, 334.0);
  EXPECT_DOUBLE_EQ(a.cost, 2 * 149800.0);
}

TEST(Upgrade, RuleFourAddsPadMount) {
  CostBook book;
  auto a = upgrade_action(100.0, 130.0, book);
  EXPECT_EQ(a.kind, UpgradeKind::kAdditionalPadMount);
  EXPECT_EQ(a.purchased_units, std::vector<double>{75.0});
  EXPECT_DOUBLE_EQ(a.cost, 74900.0);
  EXPECT_EQ(a.post_capacity, 175.0);
}

TEST(Upgrade, ResidualCaseFallsBackToAdditionalPoleTop) {
  CostBook book;
  // 1.25c < peak <= 2c with peak > 75 and c <= 75: no listed rule applies.
  auto a = upgrade_action(60.0, 90.0, book);
  EXPECT_EQ(a.kind, UpgradeKind::kAdditionalPoleTop);
  EXPECT_TRUE(a.fallback);
  EXPECT_EQ(a.purchased_units, std::vector<double>{37.5});
  EXPECT_GE(a.post_capacity, 90.0);
}

TEST(Upgrade, ExactlyDoubleCapacityUsesFallback) {
  CostBook book;
  auto a = upgrade_action(20.0, 40.0, book);
  EXPECT_TRUE(a.fallback);
  EXPECT_GE(a.post_capacity, 40.0);
}

TEST(Upgrade, SmallGridAlwaysCoversPeak) {
  CostBook book;
  for (double c = 5.0; c <= 100.0; c += 2.5)
    for (double p = 0.0; p <= 400.0; p += 2.5) {
      auto a = upgrade_action(c, p, book);
      if (is_overloaded(c, p)) {
        ASSERT_GE(a.post_capacity, p) << c << " " << p;
        ASSERT_GT(a.cost, 0.0);
      } else {
        ASSERT_EQ(a.kind, UpgradeKind::kNoAction);
      }
    }
}

TEST(Constants, Violations) {
  PhysicalConstants k;
  EXPECT_TRUE(k.violations().empty());
  k.cop = 0.0;
  k.median_annual_gas = -1.0;
  EXPECT_EQ(k.violations().size(), 2u);
  CostBook book;
  book.pad_mount.denominations = {};
  EXPECT_FALSE(book.violations().empty());
}

}  // namespace
}  // namespace heatnet
