#include "cmcts/bench/runner.hpp"

#include <chrono>
#include <memory>

#include "cmcts/environments/registry.hpp"
#include "cmcts/rng.hpp"

namespace cmcts::bench {

EpisodeResult run_episode(const Environment& env, const SearchConfig& config,
                          const StrategyConfig& strategy,
                          std::uint64_t episode_seed) {
  EpisodeResult result;
  State state = env.initial_state();
  RandomStream exec_stream = derive_stream(episode_seed, {{"exec", 0}});

  while (!state.terminal && state.depth < env.spec().horizon) {
    SearchConfig step_config = config;
    step_config.rng_seed = derive_seed(
        episode_seed, {{"step", static_cast<std::uint64_t>(result.steps)}});
    const JointAction action =
        plan_joint_action(env, state, step_config, strategy);
    for (const ContinuousAction& a : action) {
      result.action_trace.insert(result.action_trace.end(), a.values.begin(),
                                 a.values.end());
    }
    StepResult step = env.step(state, action, exec_stream);
    state = std::move(step.next_state);
    ++result.steps;
  }
  result.success = env.episode_success(state);
  return result;
}

std::vector<RunRecord> run_plan(const ExperimentPlan& plan) {
  plan.validate();

  struct Combination {
    std::size_t index = 0;
    std::string scenario;
    StrategyKind kind = StrategyKind::kSingle;
    std::uint64_t budget = 0;
    int workers = 1;
  };
  std::vector<Combination> combos;
  combos.reserve(plan.combination_count());
  std::size_t index = 0;
  for (const std::string& scenario : plan.scenarios) {
    for (const StrategyKind kind : plan.strategies) {
      for (const std::uint64_t budget : plan.iteration_budgets) {
        for (const int workers : plan.worker_counts) {
          combos.push_back({index++, scenario, kind, budget, workers});
        }
      }
    }
  }

  // Environments are immutable; one instance per scenario is shared by all
  // episodes.
  std::vector<std::unique_ptr<Environment>> environments;
  std::vector<SearchConfig> base_configs;
  for (const std::string& scenario : plan.scenarios) {
    environments.push_back(envs::make_environment(scenario));
    base_configs.push_back(envs::preset_search_config(scenario));
  }
  const auto scenario_slot = [&](const std::string& name) {
    for (std::size_t i = 0; i < plan.scenarios.size(); ++i) {
      if (plan.scenarios[i] == name) return i;
    }
    throw PlanError("unknown preset: " + name);
  };

  const std::size_t reps = static_cast<std::size_t>(plan.repetitions);
  std::vector<RunRecord> records(plan.record_count());

  const auto run_one = [&](std::size_t flat) {
    const Combination& combo = combos[flat / reps];
    const std::size_t rep = flat % reps;
    const std::size_t slot = scenario_slot(combo.scenario);

    SearchConfig config = base_configs[slot];
    config.iteration_budget = combo.budget;

    StrategyConfig strategy;
    strategy.kind = combo.kind;
    strategy.worker_count = combo.workers;
    strategy.divided_budget = plan.divided_budget;

    const std::uint64_t seed = derive_seed(
        plan.base_seed,
        {{"combo", combo.index}, {"rep", static_cast<std::uint64_t>(rep)}});

    RunRecord& record = records[flat];
    record.scenario = combo.scenario;
    record.strategy = to_string(combo.kind);
    record.workers = combo.workers;
    record.budget = combo.budget;
    record.rep = static_cast<int>(rep);
    record.seed = seed;

    const auto start = std::chrono::steady_clock::now();
    try {
      const EpisodeResult episode =
          run_episode(*environments[slot], config, strategy, seed);
      record.success = episode.success;
      record.steps = episode.steps;
      record.action_trace = episode.action_trace;
    } catch (const std::exception&) {
      // A failed episode is recorded as unsuccessful; the plan continues.
      record.success = false;
      record.steps = 0;
    }
    record.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  };

  const std::size_t total = records.size();
  if (plan.jobs <= 1) {
    for (std::size_t i = 0; i < total; ++i) run_one(i);
  } else {
    WorkerPool pool(plan.jobs);
    pool.run_indexed(static_cast<int>(total),
                     [&](int i) { run_one(static_cast<std::size_t>(i)); });
  }
  return records;
}

}  // namespace cmcts::bench
