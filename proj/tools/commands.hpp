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

// Subcommands of the heatnet tool. Each returns a process exit code:
// 0 success, 1 usage, 2 validation, 3 internal.

#ifndef HEATNET_TOOLS_COMMANDS_HPP_
#define HEATNET_TOOLS_COMMANDS_HPP_

#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "heatnet.hpp"

namespace heatnet::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInvalid = 2, kInternal = 3 };

class UsageError : public Error {
 public:
  using Error::Error;
};

// Maps library exceptions onto the exit-code contract with a one-line
// diagnostic.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    err << "invalid: " << e.what() << "\n";
    for (const auto& v : e.violations()) err << "  " << v << "\n";
    return kInvalid;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kInvalid;
  } catch (const ReplayMismatch& e) {
    err << "replay mismatch: " << e.what() << "\n";
    return kInvalid;
  } catch (const InvalidReference& e) {
    err << "invalid: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

inline void write_text(const std::string& path, const std::string& text) {
  io::write_file(path, text);
}

// ---------------------------------------------------------------------------

struct GenerateOptions {
  std::optional<std::string> params_file;
  std::optional<std::uint64_t> seed;
  std::string out;
};

inline int cmd_generate(const GenerateOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    SyntheticCityParams p;
    if (o.params_file)
      p = synthetic_params_from_text(io::read_file(*o.params_file), *o.params_file);
    if (o.seed) p.seed = *o.seed;
    const Scenario s = generate_synthetic_city(p);
    write_text(o.out, scenario_text(s));
    out << fmt::format("wrote {}: {} households, {} transformers, {} edges\n", o.out,
                       s.households().size(), s.transformers().size(),
                       s.network().edges().size());
    return kOk;
  });
}

// ---------------------------------------------------------------------------

inline int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ScenarioParts parts = scenario_parts_from_text(io::read_file(path), path);
    auto problems = scenario_violations(parts);
    if (!problems.empty()) {
      err << path << ": " << problems.size() << " violation(s)\n";
      for (const auto& v : problems) err << "  " << v << "\n";
      return kInvalid;
    }
    out << path << ": ok\n";
    return kOk;
  });
}

// ---------------------------------------------------------------------------

struct IngestCommandOptions {
  std::string roads;
  std::string households;
  std::string transformers;
  std::int64_t source = 0;
  std::optional<double> maintenance_spend;
  std::vector<std::string> exclude_classes;
  std::string out;
};

inline int cmd_ingest(const IngestCommandOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    IngestOptions opts;
    opts.source = NodeId{o.source};
    if (o.maintenance_spend) opts.annual_maintenance_spend = *o.maintenance_spend;
    if (!o.exclude_classes.empty()) opts.excluded_classes = o.exclude_classes;
    auto hh_in = detail::open_input(o.households);
    auto tr_in = detail::open_input(o.transformers);
    const Scenario s = ingest_scenario(read_road_graph(o.roads), read_households(hh_in, o.households),
                                       read_transformers(tr_in, o.transformers), opts);
    write_text(o.out, scenario_text(s));
    out << fmt::format("wrote {}: {} households, {} edges after pruning\n", o.out,
                       s.households().size(), s.network().edges().size());
    return kOk;
  });
}

// ---------------------------------------------------------------------------

// "low:x,med:y,high:z" or "x,y,z" (low, medium, high).
inline std::map<IncomeGroup, double> parse_equity(const std::string& text) {
  std::map<IncomeGroup, double> shares;
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.empty()) throw UsageError("--equity: empty allocation");
  std::size_t positional = 0;
  for (const auto& item : parts) {
    std::string key, value = item;
    if (auto colon = item.find(':'); colon != std::string::npos) {
      key = item.substr(0, colon);
      value = item.substr(colon + 1);
    }
    IncomeGroup g;
    if (key.empty()) {
      if (positional >= kIncomeGroups.size()) throw UsageError("--equity: too many shares");
      g = kIncomeGroups[positional++];
    } else {
      auto parsed = parse_income_group(key);
      if (!parsed) throw UsageError("--equity: unknown group '" + key + "'");
      g = *parsed;
    }
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw UsageError("--equity: '" + value + "' is not a number");
    }
    if (!(v >= 0.0)) throw UsageError("--equity: share for " + std::string(to_string(g)) + " is negative");
    if (!shares.emplace(g, v).second)
      throw UsageError("--equity: group " + std::string(to_string(g)) + " given twice");
  }
  double sum = 0.0;
  for (const auto& [g, v] : shares) sum += v;
  if (std::abs(sum - 1.0) > 1e-6) throw UsageError(fmt::format("--equity: shares sum to {}, not 1", sum));
  return shares;
}

inline std::pair<std::string, double> parse_override(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0)
    throw UsageError("--constants-override expects key=value, got '" + text + "'");
  const std::string value = text.substr(eq + 1);
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used == value.size()) return {text.substr(0, eq), v};
  } catch (const std::exception&) {
  }
  throw UsageError("--constants-override: '" + value + "' is not a number");
}

struct PlanOptions {
  std::string scenario;
  std::optional<double> budget_frac;
  std::optional<double> budget;
  std::optional<std::string> equity;
  std::optional<double> maintenance_mult;
  double granularity = 1000.0;
  std::vector<std::string> overrides;
  std::string out;
  std::optional<std::string> metrics;
};

struct PlanRun {
  TransitionPlan plan;
  std::string digest;
  double benchmark = 0.0;
};

// The whole plan pipeline short of writing files; shared with tests.
inline PlanRun run_plan(const PlanOptions& o) {
  if (o.budget_frac.has_value() == o.budget.has_value())
    throw UsageError("give exactly one of --budget-frac and --budget");
  const std::string text = io::read_file(o.scenario);
  const Scenario loaded = scenario_from_text(text, o.scenario);
  CostBook book = loaded.costs();
  for (const auto& item : o.overrides) {
    auto [key, value] = parse_override(item);
    if (!set_constant(book, key, value)) throw UsageError("unknown constant '" + key + "'");
  }
  if (o.maintenance_mult) book.constants.maintenance_multiplier = *o.maintenance_mult;
  auto problems = book.violations();
  if (!problems.empty()) throw UsageError("constants: " + problems.front());
  auto scenario = std::make_shared<const Scenario>(loaded.with_costs(book));

  const double benchmark = benchmark_budget(*scenario);
  double total = 0.0;
  if (o.budget) total = *o.budget;
  else total = *o.budget_frac * benchmark;
  if (!(total >= 0.0)) throw UsageError("budget must be >= 0");
  if (!(o.granularity > 0.0)) throw UsageError("--granularity must be positive");

  BudgetSpec budget_spec{total, o.granularity, std::nullopt};
  if (o.equity) budget_spec = BudgetSpec::with_shares(total, parse_equity(*o.equity), o.granularity);
  return {solve(scenario, budget_spec), io::digest(text), benchmark};
}

inline std::string metrics_csv(const SummaryMetrics& m) {
  std::ostringstream s;
  write_metrics_csv(m, s);
  return s.str();
}

inline int cmd_plan(const PlanOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    PlanRun run = run_plan(o);
    const SummaryMetrics m = summarize(run.plan);
    write_text(o.out, plan_text(run.plan, run.digest));
    if (o.metrics) write_text(*o.metrics, metrics_csv(m));
    out << fmt::format("benchmark budget {:.2f}, budget {:.2f}, spent {:.2f}\n", run.benchmark,
                       m.budget, m.spent);
    out << fmt::format("{} steps, carbon reduction {:.2f}%, pipeline shutdown {:.2f}%\n",
                       run.plan.steps.size(), m.carbon_reduction_pct, m.pipeline_shutdown_pct);
    return kOk;
  });
}

// ---------------------------------------------------------------------------

struct ReportOptions {
  std::string plan;
  std::string scenario;
  std::optional<std::string> metrics;   // metric,value
  std::optional<std::string> trace;     // one row per step
  std::optional<std::string> overload;  // one row per transformer
};

inline std::string trace_csv(const TransitionPlan& plan) {
  std::string s = "step,pseudo_index,edges,households,group,installs,upgrades,savings,cost,carbon,utility\n";
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const auto& st = plan.steps[i];
    const auto& o = st.outcome;
    s += fmt::format("{},\"{}\",{},{},{},{},{},{},{},{},{}\n", i, to_string(st.neighborhood.pseudo_index),
                     st.neighborhood.edges.size(), o.households.size(), to_string(o.group),
                     o.installs, o.upgrades, o.savings, o.cost(), o.carbon,
                     utility(o.carbon, o.cost()));
  }
  return s;
}

inline std::string overload_csv(const OverloadStatistics& before, const OverloadStatistics& after,
                                const OverloadStatistics& full) {
  std::string s = "transformer,pct_time_overloaded_before,pct_time_overloaded_after,"
                  "pct_time_overloaded_full_conversion\n";
  for (const auto& [id, b] : before.pct_time_overloaded)
    s += fmt::format("{},{},{},{}\n", id.value, b, after.pct_time_overloaded.at(id),
                     full.pct_time_overloaded.at(id));
  return s;
}

inline int cmd_report(const ReportOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::string text = io::read_file(o.scenario);
    const Scenario scenario = scenario_from_text(text, o.scenario);
    const PlanFile file = plan_from_text(io::read_file(o.plan), o.plan);
    const TransitionPlan plan = replay_plan(file, scenario, io::digest(text));
    const SummaryMetrics m = summarize(plan);

    const Scenario& s = plan.final_state.scenario();
    const auto before = overload_statistics(s, TransitionState::initial(plan.final_state.scenario_ptr()));
    const auto after = overload_statistics(s, plan.final_state);
    const auto full = full_conversion_overload_statistics(s);

    out << "replay ok: " << plan.steps.size() << " steps reproduce the plan file\n\n";
    out << fmt::format("{:<28}{:>18}\n", "metric", "value");
    for (const auto& [name, value] : m.rows()) out << fmt::format("{:<28}{:>18.4f}\n", name, value);
    out << "\n" << fmt::format("{:<28}{:>12}{:>12}{:>16}\n", "transformers", "before", "after", "all converted");
    out << fmt::format("{:<28}{:>11.2f}%{:>11.2f}%{:>15.2f}%\n", "overloaded (>125%)",
                       before.pct_overloaded, after.pct_overloaded, full.pct_overloaded);
    out << fmt::format("{:<28}{:>11.2f}%{:>11.2f}%{:>15.2f}%\n", "highly utilized (90-125%)",
                       before.pct_highly_utilized, after.pct_highly_utilized, full.pct_highly_utilized);
    out << "\n" << fmt::format("{:>5}  {:<18}{:>6}{:>6}  {:<7}{:>14}{:>12}\n", "step", "pseudo-index",
                               "edges", "homes", "group", "cost", "tCO2");
    for (std::size_t i = 0; i < plan.steps.size(); ++i) {
      const auto& st = plan.steps[i];
      out << fmt::format("{:>5}  {:<18}{:>6}{:>6}  {:<7}{:>14.2f}{:>12.3f}\n", i,
                         to_string(st.neighborhood.pseudo_index), st.neighborhood.edges.size(),
                         st.outcome.households.size(), to_string(st.outcome.group),
                         st.outcome.cost(), st.outcome.carbon);
    }
    if (o.metrics) write_text(*o.metrics, metrics_csv(m));
    if (o.trace) write_text(*o.trace, trace_csv(plan));
    if (o.overload) write_text(*o.overload, overload_csv(before, after, full));
    return kOk;
  });
}

}  // namespace heatnet::cli

#endif  // HEATNET_TOOLS_COMMANDS_HPP_
