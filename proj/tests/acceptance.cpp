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

// Acceptance gate: one PASS/FAIL line per exit criterion. Exits non-zero
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "commands.hpp"
#include "heatnet.hpp"
#include "support.hpp"

namespace {

using namespace heatnet;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  double time_limit_s;  // infinity when no limit applies
  std::function<Verdict()> check;
};

constexpr int kSeeds = 50;
constexpr double kFractions[] = {0.05, 0.10, 0.15, 0.20};

// ---------------------------------------------------------------------------
// Seeded default cities and the plans every city-level criterion shares.

struct SeedRun {
  std::uint64_t seed = 0;
  std::shared_ptr<const Scenario> scenario;
  double benchmark = 0.0;
  std::vector<TransitionPlan> nhpt;   // one per fraction
  std::vector<TransitionPlan> enhpt;  // equal thirds, one per fraction
};

std::map<IncomeGroup, double> thirds() {
  return {{IncomeGroup::kLow, 1.0 / 3}, {IncomeGroup::kMedium, 1.0 / 3}, {IncomeGroup::kHigh, 1.0 / 3}};
}

std::vector<SeedRun>& runs() {
  static std::vector<SeedRun> all = [] {
    std::vector<SeedRun> out;
    for (int i = 1; i <= kSeeds; ++i) {
      SeedRun r;
      r.seed = static_cast<std::uint64_t>(i);
      SyntheticCityParams p;
      p.seed = r.seed;
      r.scenario = std::make_shared<const Scenario>(generate_synthetic_city(p));
      r.benchmark = benchmark_budget(*r.scenario);
      for (double f : kFractions) {
        const double b = f * r.benchmark;
        r.nhpt.push_back(solve_nhpt(r.scenario, {b}));
        r.enhpt.push_back(solve_enhpt(r.scenario, BudgetSpec::with_shares(b, thirds())));
      }
      out.push_back(std::move(r));
    }
    return out;
  }();
  return all;
}

constexpr std::size_t kTenPercent = 1;

double carbon_of(const TransitionPlan& plan) {
  double c = 0.0;
  for (const auto& s : plan.steps) c += s.outcome.carbon;
  return c;
}

// ---------------------------------------------------------------------------

Verdict conversion_constants() {
  const PhysicalConstants k;
  PhysicalConstants unit_cop;
  unit_cop.cop = 1.0;
  PhysicalConstants priced;
  priced.median_annual_gas = 1000.0;
  const double carbon = carbon_emissions(1.0, k);
  const double kwh = heat_to_electric(1000.0, unit_cop);
  const double at_median = ashp_install_cost(1000.0, priced);
  const double at_double = ashp_install_cost(2000.0, priced);
  const bool ok = carbon == 0.00551 && kwh == 0.293071 && at_median == 15000.0 && at_double == 30000.0;
  return {ok, fmt::format("carbon {} t, {} kWh, ${} and ${}", carbon, kwh, at_median, at_double)};
}

Verdict knapsack_oracle() {
  std::mt19937_64 rng(20260101);
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const int n = std::uniform_int_distribution<int>(0, 15)(rng);
    const auto cap = std::uniform_int_distribution<std::int64_t>(0, 100)(rng);
    std::vector<double> v;
    std::vector<std::int64_t> w;
    for (int j = 0; j < n; ++j) {
      v.push_back(std::uniform_real_distribution<double>(0.0, 100.0)(rng));
      w.push_back(std::uniform_int_distribution<std::int64_t>(0, 60)(rng));
    }
    const KnapsackSolution s = knapsack_dp(v, w, cap);
    const double best = testing::brute_force_knapsack(v, w, cap);
    double value = 0.0;
    std::int64_t weight = 0;
    for (std::size_t k : s.items) value += v[k], weight += w[k];
    if (std::abs(s.value - best) > 1e-9 * std::max(1.0, best) || weight > cap ||
        std::abs(value - s.value) > 1e-9 * std::max(1.0, best))
      ++mismatches;
  }
  return {mismatches == 0, fmt::format("{} mismatches in 1000 instances", mismatches)};
}

// Edges beneath `edge` in a tree: root the tree at the source and take the
// subtree of whichever endpoint is the child.
std::set<EdgeKey> subtree_edges(const GasNetwork& net, const EdgeKey& edge) {
  std::map<NodeId, std::vector<NodeId>> adj;
  for (const auto& [k, e] : net.edges()) {
    adj[k.tail].push_back(k.head);
    adj[k.head].push_back(k.tail);
  }
  std::map<NodeId, NodeId> parent{{net.source(), net.source()}};
  std::vector<NodeId> stack{net.source()};
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    for (NodeId m : adj[n])
      if (parent.emplace(m, n).second) stack.push_back(m);
  }
  const NodeId child = parent.at(edge.head) == edge.tail ? edge.head : edge.tail;
  auto below = [&](NodeId n) {
    while (true) {
      if (n == child) return true;
      if (n == net.source()) return false;
      n = parent.at(n);
    }
  };
  std::set<EdgeKey> out{edge};
  for (const auto& [k, e] : net.edges())
    if (below(k.tail) && below(k.head)) out.insert(k);
  return out;
}

Verdict neighborhood_oracle() {
  std::mt19937_64 rng(777);
  int tree_bad = 0, cyclic_bad = 0;
  std::size_t checked = 0;
  for (int i = 0; i < 200; ++i) {
    GasNetwork net = testing::random_tree(rng, std::uniform_int_distribution<int>(2, 50)(rng));
    for (const auto& n : enumerate_neighborhoods(net)) {
      ++checked;
      if (std::set<EdgeKey>(n.edges.begin(), n.edges.end()) != subtree_edges(net, n.pseudo_index))
        ++tree_bad;
    }
  }
  for (int i = 0; i < 200; ++i) {
    const int nodes = std::uniform_int_distribution<int>(3, 50)(rng);
    GasNetwork net = testing::random_cyclic(rng, nodes, std::uniform_int_distribution<int>(1, nodes)(rng));
    auto ns = enumerate_neighborhoods(net);
    if (ns.size() != net.edges().size()) ++cyclic_bad;
    for (const auto& n : ns) {
      ++checked;
      const auto cut = testing::bfs_cut_off(net, {n.pseudo_index});
      const bool bridge = !cut.empty();
      const bool singleton = n.edges.size() == 1;
      auto touching = testing::edges_touching(net, cut);
      std::set<EdgeKey> want(touching.begin(), touching.end());
      want.insert(n.pseudo_index);
      // A non-bridge must be a singleton; a bridge owns exactly what it cuts off.
      if ((!bridge && !singleton) || std::set<EdgeKey>(n.edges.begin(), n.edges.end()) != want)
        ++cyclic_bad;
    }
  }
  return {tree_bad == 0 && cyclic_bad == 0,
          fmt::format("{} neighborhoods checked, {} tree and {} cyclic mismatches", checked,
                      tree_bad, cyclic_bad)};
}

Verdict upgrade_totality() {
  const CostBook book;
  int violations = 0, points = 0;
  for (int cap = 5; cap <= 225; cap += 5) {
    for (int peak = 0; peak <= 500; peak += 5) {
      ++points;
      const UpgradeAction a = upgrade_action(cap, peak, book);
      if (!(a == upgrade_action(cap, peak, book))) ++violations;
      if (peak > CostBook::kOverloadRatio * cap) {
        if (a.kind == UpgradeKind::kNoAction || !(a.post_capacity >= peak)) ++violations;
      } else if (a.kind != UpgradeKind::kNoAction || a.cost != 0.0) {
        ++violations;
      }
    }
  }
  return {violations == 0, fmt::format("{} grid points, {} violations", points, violations)};
}

Verdict budget_invariants() {
  int plans = 0, violations = 0;
  std::size_t households = 0;
  for (const auto& r : runs()) {
    households += r.scenario->households().size();
    for (std::size_t i = 0; i < std::size(kFractions); ++i) {
      for (const TransitionPlan* p : {&r.nhpt[i], &r.enhpt[i]}) {
        ++plans;
        const SpendLedger& l = p->final_state.ledger();
        if (l.total() > p->budget.total) ++violations;
        if (p->budget.equity)
          for (const auto& [g, cap] : *p->budget.equity)
            if (l.group_spend[index_of(g)] > cap) ++violations;
      }
    }
  }
  return {violations == 0,
          fmt::format("{} plans on cities averaging {} households, {} violations", plans,
                      households / runs().size(), violations)};
}

Verdict dominance() {
  int holds = 0;
  for (const auto& r : runs()) {
    const TransitionPlan& plan = r.nhpt[kTenPercent];
    const SummaryMetrics m = summarize(plan);
    const ObliviousResult o = solve_oblivious(*r.scenario, plan.budget.total);
    const double aware_rate = m.households_converted > 0
                                  ? m.transformers_upgraded / m.households_converted
                                  : std::numeric_limits<double>::infinity();
    const double blind_rate = !o.converted.empty()
                                  ? static_cast<double>(o.upgraded.size()) / o.converted.size()
                                  : std::numeric_limits<double>::infinity();
    if (m.carbon_reduced > o.carbon && m.shutdown_length > o.shutdown_length &&
        aware_rate < blind_rate)
      ++holds;
  }
  return {holds >= 45, fmt::format("holds on {}/{} seeds (need 45)", holds, kSeeds)};
}

Verdict equity_direction() {
  int households_hold = 0, carbon_hold = 0;
  std::vector<std::uint64_t> carbon_misses;
  for (const auto& r : runs()) {
    const TransitionPlan& n = r.nhpt[kTenPercent];
    const TransitionPlan& e = r.enhpt[kTenPercent];
    if (e.final_state.converted_households().size() >= n.final_state.converted_households().size())
      ++households_hold;
    if (carbon_of(e) <= carbon_of(n)) ++carbon_hold;
    else carbon_misses.push_back(r.seed);
  }
  std::string misses;
  for (auto s : carbon_misses) misses += (misses.empty() ? "" : ",") + std::to_string(s);
  return {households_hold >= 40 && carbon_hold == kSeeds,
          fmt::format("households {}/{} (need 40), carbon {}/{} (need all){}", households_hold,
                      kSeeds, carbon_hold, kSeeds,
                      misses.empty() ? "" : "; carbon exceeded on seeds " + misses)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict replay_determinism() {
  const fs::path dir = fs::temp_directory_path() / "heatnet_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  int ok = 0;
  std::string first_failure;
  std::ostringstream sink;
  for (const auto& r : runs()) {
    const fs::path city = dir / "city.json";
    write_scenario(*r.scenario, city.string());
    cli::PlanOptions o;
    o.scenario = city.string();
    o.budget_frac = 0.10;
    o.out = (dir / "a.json").string();
    o.metrics = (dir / "a.csv").string();
    const int first = cli::cmd_plan(o, sink, sink);
    o.out = (dir / "b.json").string();
    o.metrics = (dir / "b.csv").string();
    const int second = cli::cmd_plan(o, sink, sink);
    cli::ReportOptions rep;
    rep.plan = (dir / "a.json").string();
    rep.scenario = city.string();
    rep.metrics = (dir / "r.csv").string();
    const int report = cli::cmd_report(rep, sink, sink);
    const bool same = first == 0 && second == 0 && report == 0 &&
                      slurp(dir / "a.json") == slurp(dir / "b.json") &&
                      slurp(dir / "a.csv") == slurp(dir / "b.csv") &&
                      slurp(dir / "r.csv") == slurp(dir / "a.csv");
    if (same) ++ok;
    else if (first_failure.empty()) first_failure = fmt::format("; first failure at seed {}", r.seed);
  }
  fs::remove_all(dir);
  return {ok == kSeeds, fmt::format("{}/{} seeds identical and replayed{}", ok, kSeeds, first_failure)};
}

Verdict linearity() {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> amount(0.0, 1e5), scale(0.0, 10.0);
  PhysicalConstants k;
  k.median_annual_gas = 987.0;
  k.maintenance_rate = 3.7;
  auto savings = [&](double length) {
    PipeEdge e;
    e.length = length;
    return maintenance_savings(std::span<const PipeEdge>(&e, 1), k);
  };
  const std::vector<std::pair<std::string, std::function<double(double)>>> maps{
      {"gas_to_heat", [&](double x) { return gas_to_heat(x, k); }},
      {"heat_to_electric", [&](double x) { return heat_to_electric(x, k); }},
      {"carbon_emissions", [&](double x) { return carbon_emissions(x, k); }},
      {"ashp_install_cost", [&](double x) { return ashp_install_cost(x, k); }},
      {"maintenance_savings", savings}};
  auto rel = [](double got, double want) {
    const double denom = std::max(std::abs(want), std::numeric_limits<double>::min());
    return got == want ? 0.0 : std::abs(got - want) / denom;
  };
  double worst = 0.0;
  std::string worst_map;
  for (int i = 0; i < 10000; ++i) {
    const auto& [name, f] = maps[static_cast<std::size_t>(i) % maps.size()];
    const double a = amount(rng), b = amount(rng), c = scale(rng);
    const double dev = std::max(rel(f(a + b), f(a) + f(b)), rel(f(c * a), c * f(a)));
    if (dev > worst) worst = dev, worst_map = name;
  }
  return {worst <= 1e-12, fmt::format("10000 pairs, max relative deviation {:.3g}{}", worst,
                                      worst_map.empty() ? "" : " (" + worst_map + ")")};
}

}  // namespace

int main() {
  constexpr double kNone = std::numeric_limits<double>::infinity();
  const std::vector<Criterion> criteria{
      {"conversion constants", 1.0, conversion_constants},
      {"knapsack matches exhaustive search", 30.0, knapsack_oracle},
      {"neighborhoods match connectivity oracles", 60.0, neighborhood_oracle},
      {"upgrade rules total over capacity x peak grid", kNone, upgrade_totality},
      {"budget and group caps hold on 50 cities", 600.0, budget_invariants},
      {"network-aware plan beats oblivious baseline", kNone, dominance},
      {"equity constraint trade-off direction", kNone, equity_direction},
      {"plan and report replay deterministically", kNone, replay_determinism},
      {"cost and physics maps are linear", kNone, linearity},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (secs > c.time_limit_s) {
      v.pass = false;
      v.detail += fmt::format("; over the {:.0f} s limit", c.time_limit_s);
    }
    failed += v.pass ? 0 : 1;
    std::cout << fmt::format("{}  {:<48} {} [{:.2f} s]", v.pass ? "PASS" : "FAIL", c.name, v.detail,
                             secs)
              << std::endl;
  }
  std::cout << fmt::format("{} of {} criteria passed", criteria.size() - failed, criteria.size())
            << std::endl;
  return failed == 0 ? 0 : 1;
}
