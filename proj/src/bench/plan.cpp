#include "cmcts/bench/plan.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cmcts/environments/registry.hpp"

namespace cmcts::bench {

void ExperimentPlan::validate() const {
  if (scenarios.empty()) throw PlanError("plan has no scenarios");
  if (strategies.empty()) throw PlanError("plan has no strategies");
  if (iteration_budgets.empty()) throw PlanError("plan has no budgets");
  if (worker_counts.empty()) throw PlanError("plan has no worker counts");
  if (repetitions < 1) throw PlanError("repetitions must be >= 1");
  if (jobs < 1) throw PlanError("jobs must be >= 1");
  for (const std::string& s : scenarios) {
    if (!envs::is_preset(s)) throw PlanError("unknown preset: " + s);
  }
  for (const std::uint64_t b : iteration_budgets) {
    if (b < 1) throw PlanError("iteration budgets must be >= 1");
  }
  for (const int w : worker_counts) {
    if (w < 1) throw PlanError("worker counts must be >= 1");
  }
  for (const StrategyKind k : strategies) {
    if (k == StrategyKind::kSingle) {
      for (const int w : worker_counts) {
        if (w != 1) {
          throw PlanError(
              "the single strategy only pairs with worker count 1; sweep it "
              "in a separate plan");
        }
      }
    }
  }
}

std::size_t ExperimentPlan::combination_count() const {
  return scenarios.size() * strategies.size() * iteration_budgets.size() *
         worker_counts.size();
}

std::size_t ExperimentPlan::record_count() const {
  return combination_count() * static_cast<std::size_t>(repetitions);
}

ExperimentPlan plan_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw PlanError(std::string("plan is not valid JSON: ") + e.what());
  }

  ExperimentPlan plan;
  try {
    plan.scenarios = j.at("scenarios").get<std::vector<std::string>>();
    for (const auto& name : j.at("strategies")) {
      plan.strategies.push_back(
          strategy_from_string(name.get<std::string>()));
    }
    if (j.contains("budgets")) {
      plan.iteration_budgets =
          j.at("budgets").get<std::vector<std::uint64_t>>();
    } else {
      plan.iteration_budgets.assign(std::begin(kDefaultBudgetSweep),
                                    std::end(kDefaultBudgetSweep));
    }
    plan.worker_counts = j.at("workers").get<std::vector<int>>();
    plan.repetitions = j.value("repetitions", 50);
    plan.base_seed = j.value("base_seed", std::uint64_t{0});
    plan.output_path = j.value("output", std::string{});
    plan.divided_budget = j.value("divided_budget", false);
    plan.jobs = j.value("jobs", 1);
  } catch (const nlohmann::json::exception& e) {
    throw PlanError(std::string("bad plan field: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw PlanError(e.what());
  }
  plan.validate();
  return plan;
}

ExperimentPlan load_plan(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PlanError("cannot open plan file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return plan_from_json(buffer.str());
}

}  // namespace cmcts::bench
