#include "cmcts/environments/registry.hpp"

#include <limits>

#include "cmcts/environments/coop_merge.hpp"
#include "cmcts/environments/narrow_passage.hpp"
#include "cmcts/environments/toy_world.hpp"

namespace cmcts::envs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

MergeScenarioParams merge_2a_easy() {
  MergeScenarioParams p;
  p.name = "merge-2a-easy";
  p.agent_count = 2;
  p.start_pos = {0.0, 25.0};
  p.start_lane = {0.0, 1.0};
  p.start_speed = {10.0, 10.0};
  p.goal_lane = {0.0, 0.0};
  p.lane_end_pos = {kInf, 95.0};
  p.horizon = 8;
  return p;
}

MergeScenarioParams merge_3a_tight() {
  MergeScenarioParams p;
  p.name = "merge-3a-tight";
  p.agent_count = 3;
  p.start_pos = {8.0, -3.0, 2.5};
  p.start_lane = {0.0, 0.0, 1.0};
  p.start_speed = {10.0, 10.0, 9.0};
  p.goal_lane = {0.0, 0.0, 0.0};
  p.lane_end_pos = {kInf, kInf, 38.0};
  p.horizon = 10;
  return p;
}

MergeScenarioParams merge_4a_tight() {
  MergeScenarioParams p;
  p.name = "merge-4a-tight";
  p.agent_count = 4;
  p.start_pos = {18.0, 5.0, -8.0, 1.0};
  p.start_lane = {0.0, 0.0, 0.0, 1.0};
  p.start_speed = {10.0, 10.0, 10.0, 9.0};
  p.goal_lane = {0.0, 0.0, 0.0, 0.0};
  p.lane_end_pos = {kInf, kInf, kInf, 42.0};
  p.horizon = 10;
  return p;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"toy-parabola", "narrow-5pct", "merge-2a-easy", "merge-3a-tight",
          "merge-4a-tight"};
}

bool is_preset(const std::string& name) {
  for (const std::string& p : preset_names()) {
    if (p == name) return true;
  }
  return false;
}

std::unique_ptr<Environment> make_environment(const std::string& name) {
  if (name == "toy-parabola") return std::make_unique<ToyParabolaWorld>();
  if (name == "narrow-5pct") return std::make_unique<NarrowPassageEnv>();
  if (name == "merge-2a-easy") {
    return std::make_unique<CoopMergeEnv>(merge_2a_easy());
  }
  if (name == "merge-3a-tight") {
    return std::make_unique<CoopMergeEnv>(merge_3a_tight());
  }
  if (name == "merge-4a-tight") {
    return std::make_unique<CoopMergeEnv>(merge_4a_tight());
  }
  throw UnknownPreset("unknown preset: " + name);
}

SearchConfig preset_search_config(const std::string& name) {
  SearchConfig config;
  if (name == "toy-parabola") {
    config.planning_horizon = 1;
    config.pw_coefficient = 1.0;
    config.pw_exponent = 0.5;
    config.kernel_bandwidth = 500.0;
    config.uct_exploration_c = 1.0;
    config.iteration_budget = 2000;
  } else if (name == "narrow-5pct") {
    config.planning_horizon = 6;
    config.pw_coefficient = 2.0;
    config.pw_exponent = 0.5;
    config.kernel_bandwidth = 2000.0;
    config.uct_exploration_c = 1.0;
    config.iteration_budget = 400;
  } else if (name == "merge-2a-easy" || name == "merge-3a-tight" ||
             name == "merge-4a-tight") {
    config.planning_horizon = name == "merge-2a-easy" ? 8 : 10;
    config.pw_coefficient = 1.0;
    config.pw_exponent = 0.5;
    config.kernel_bandwidth = 20.0;
    config.uct_exploration_c = 3.0;
    config.iteration_budget = 1000;
  } else {
    throw UnknownPreset("unknown preset: " + name);
  }
  return config;
}

}  // namespace cmcts::envs
