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

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace heatnet::cli;
  CLI::App app{"Plan neighborhood-scale gas pipeline shutdowns under a budget"};
  app.require_subcommand(1);

  GenerateOptions gen;
  std::uint64_t seed = 0;
  auto* generate = app.add_subcommand("generate", "Write a synthetic city scenario");
  generate->add_option("params", gen.params_file, "JSON parameter file (defaults if omitted)");
  auto* seed_opt = generate->add_option("--seed", seed, "Random seed");
  generate->add_option("--out", gen.out, "Scenario file to write")->required();

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a scenario file for structural problems");
  validate->add_option("scenario", validate_path)->required();

  IngestCommandOptions ing;
  auto* ingest = app.add_subcommand("ingest", "Build a scenario from road, meter and transformer tables");
  ingest->add_option("--roads", ing.roads, "Road graph CSV")->required();
  ingest->add_option("--households", ing.households, "Household CSV")->required();
  ingest->add_option("--transformers", ing.transformers, "Transformer CSV")->required();
  ingest->add_option("--source", ing.source, "Gate station node id")->required();
  ingest->add_option("--maintenance-spend", ing.maintenance_spend, "City-wide annual maintenance spend");
  ingest->add_option("--exclude-class", ing.exclude_classes, "Road classes with no gas mains");
  ingest->add_option("--out", ing.out, "Scenario file to write")->required();

  PlanOptions plan;
  auto* plan_cmd = app.add_subcommand("plan", "Choose neighborhoods to shut down under a budget");
  plan_cmd->add_option("scenario", plan.scenario)->required();
  auto* frac = plan_cmd->add_option("--budget-frac", plan.budget_frac, "Budget as a fraction of the benchmark");
  auto* abs = plan_cmd->add_option("--budget", plan.budget, "Absolute budget");
  frac->excludes(abs);
  plan_cmd->add_option("--equity", plan.equity, "Group shares: low:x,med:y,high:z or x,y,z");
  plan_cmd->add_option("--maintenance-mult", plan.maintenance_mult, "Maintenance savings multiplier");
  plan_cmd->add_option("--granularity", plan.granularity, "Cost unit for the knapsack");
  plan_cmd->add_option("--constants-override", plan.overrides, "key=value, repeatable");
  plan_cmd->add_option("--out", plan.out, "Plan file to write")->required();
  plan_cmd->add_option("--metrics", plan.metrics, "Metrics CSV to write");

  ReportOptions rep;
  auto* report = app.add_subcommand("report", "Replay a plan and print its metrics");
  report->add_option("plan", rep.plan)->required();
  report->add_option("scenario", rep.scenario)->required();
  report->add_option("--metrics", rep.metrics, "Metrics CSV to write");
  report->add_option("--trace", rep.trace, "Per-step CSV to write");
  report->add_option("--overload", rep.overload, "Per-transformer overload CSV to write");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*generate) {
    if (*seed_opt) gen.seed = seed;
    return cmd_generate(gen, std::cout, std::cerr);
  }
  if (*validate) return cmd_validate(validate_path, std::cout, std::cerr);
  if (*ingest) return cmd_ingest(ing, std::cout, std::cerr);
  if (*plan_cmd) return cmd_plan(plan, std::cout, std::cerr);
  if (*report) return cmd_report(rep, std::cout, std::cerr);
  return kUsage;
}
