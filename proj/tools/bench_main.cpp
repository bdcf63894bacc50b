#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cmcts/bench/aggregate.hpp"
#include "cmcts/bench/plan.hpp"
#include "cmcts/bench/runner.hpp"
#include "cmcts/environments/registry.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidPlan = 1;
constexpr int kExitRuntimeFailure = 2;

void write_records(const std::vector<cmcts::bench::RunRecord>& records,
                   const std::string& path) {
  if (path.empty() || path == "-") {
    cmcts::bench::write_csv(std::cout, records);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  cmcts::bench::write_csv(out, records);
}

std::vector<cmcts::bench::RunRecord> read_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  return cmcts::bench::read_csv(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark harness for the parallel continuous-domain MCTS "
               "planner"};
  app.require_subcommand(1);

  // --- run ---
  auto* run = app.add_subcommand(
      "run", "Execute an experiment plan (from a file or inline flags)");
  std::string plan_path;
  std::string scenario;
  std::string strategy = "single";
  int workers = 1;
  std::uint64_t iterations = 1000;
  int reps = 50;
  std::uint64_t seed = 0;
  std::string out_path;
  int jobs = 1;
  bool divided = false;
  run->add_option("--plan", plan_path, "Plan file (JSON)");
  run->add_option("--scenario", scenario, "Scenario preset name");
  run->add_option("--strategy", strategy,
                  "single|leaf_mean|leaf_max|root_merge|root_vote");
  run->add_option("--workers", workers, "Worker count");
  run->add_option("--iterations", iterations, "Iteration budget per plan step");
  run->add_option("--reps", reps, "Repetitions");
  run->add_option("--seed", seed, "Base seed");
  run->add_option("--out", out_path, "Output CSV path (default: stdout)");
  run->add_option("--jobs", jobs, "Concurrent episodes");
  run->add_flag("--divided-budget", divided,
                "Split the budget across root-parallel trees");

  // --- aggregate ---
  auto* agg = app.add_subcommand(
      "aggregate", "Group run records into success-rate statistics");
  std::string agg_in, agg_out;
  agg->add_option("--in", agg_in, "Input records CSV")->required();
  agg->add_option("--out", agg_out, "Output aggregate CSV (default: stdout)");

  // --- plot-data ---
  auto* plot = app.add_subcommand(
      "plot-data", "Emit per-figure tables from a records CSV");
  std::string plot_in, plot_dir;
  plot->add_option("--in", plot_in, "Input records CSV")->required();
  plot->add_option("--out", plot_dir, "Output directory")->required();

  // --- presets ---
  auto* presets = app.add_subcommand("presets", "List scenario presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      cmcts::bench::ExperimentPlan plan;
      try {
        if (!plan_path.empty()) {
          plan = cmcts::bench::load_plan(plan_path);
          if (!out_path.empty()) plan.output_path = out_path;
          if (jobs > 1) plan.jobs = jobs;
        } else {
          if (scenario.empty()) {
            throw cmcts::bench::PlanError(
                "either --plan or --scenario is required");
          }
          plan.scenarios = {scenario};
          plan.strategies = {cmcts::strategy_from_string(strategy)};
          plan.iteration_budgets = {iterations};
          plan.worker_counts = {workers};
          plan.repetitions = reps;
          plan.base_seed = seed;
          plan.output_path = out_path;
          plan.divided_budget = divided;
          plan.jobs = jobs;
          plan.validate();
        }
      } catch (const std::invalid_argument& e) {
        std::cerr << "invalid plan: " << e.what() << '\n';
        return kExitInvalidPlan;
      }
      const auto records = cmcts::bench::run_plan(plan);
      write_records(records, plan.output_path);
    } else if (agg->parsed()) {
      const auto rows = cmcts::bench::aggregate(read_records(agg_in));
      if (agg_out.empty() || agg_out == "-") {
        cmcts::bench::write_aggregate_csv(std::cout, rows);
      } else {
        std::ofstream out(agg_out);
        if (!out) throw std::runtime_error("cannot open: " + agg_out);
        cmcts::bench::write_aggregate_csv(out, rows);
      }
    } else if (plot->parsed()) {
      const auto rows = cmcts::bench::aggregate(read_records(plot_in));
      cmcts::bench::write_plot_data(rows, plot_dir);
    } else if (presets->parsed()) {
      for (const std::string& name : cmcts::envs::preset_names()) {
        std::cout << name << '\n';
      }
    }
  } catch (const cmcts::bench::PlanError& e) {
    std::cerr << "invalid plan: " << e.what() << '\n';
    return kExitInvalidPlan;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntimeFailure;
  }
  return kExitOk;
}
