#include "cmcts/environments/coop_merge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cmcts::envs {

CoopMergeEnv::CoopMergeEnv(MergeScenarioParams params)
    : params_(std::move(params)) {
  const int n = params_.agent_count;
  if (n < 1) throw std::invalid_argument("agent_count must be >= 1");
  auto check = [n](const std::vector<double>& v, const char* what) {
    if (static_cast<int>(v.size()) != n) {
      throw std::invalid_argument(std::string("bad scenario vector: ") + what);
    }
  };
  check(params_.start_pos, "start_pos");
  check(params_.start_lane, "start_lane");
  check(params_.start_speed, "start_speed");
  check(params_.goal_lane, "goal_lane");
  if (params_.lane_end_pos.empty()) {
    params_.lane_end_pos.assign(n, std::numeric_limits<double>::infinity());
  }
  check(params_.lane_end_pos, "lane_end_pos");
  if (params_.horizon < 1) throw std::invalid_argument("horizon must be >= 1");

  spec_.name = params_.name;
  spec_.agent_count = n;
  spec_.action_dimension = 2;
  spec_.action_bounds = {{-params_.accel_limit, params_.accel_limit},
                         {-params_.lane_rate_limit, params_.lane_rate_limit}};
  spec_.horizon = params_.horizon;
}

State CoopMergeEnv::initial_state() const {
  State s;
  s.values.reserve(3 * params_.agent_count + 1);
  for (int i = 0; i < params_.agent_count; ++i) {
    s.values.push_back(params_.start_pos[i]);
    s.values.push_back(params_.start_lane[i]);
    s.values.push_back(params_.start_speed[i]);
  }
  s.values.push_back(0.0);  // failure flag
  return s;
}

StepResult CoopMergeEnv::step(const State& state, const JointAction& action,
                              RandomStream&) const {
  if (state.terminal) throw std::logic_error("step on terminal state");
  const int n = params_.agent_count;
  if (static_cast<int>(action.size()) != n) {
    throw std::invalid_argument("joint action size mismatch");
  }

  StepResult result;
  State& next = result.next_state;
  next = state;
  next.depth = state.depth + 1;
  result.rewards.assign(n, 0.0);

  for (int i = 0; i < n; ++i) {
    const auto& a = action[i].values;
    if (a.size() != 2) throw std::invalid_argument("action dimension mismatch");
    if (std::abs(a[0]) > params_.accel_limit + 1e-12 ||
        std::abs(a[1]) > params_.lane_rate_limit + 1e-12) {
      throw std::domain_error("action out of bounds");
    }
    double speed = agent_speed(state, i) + a[0] * params_.dt;
    speed = std::clamp(speed, 0.0, params_.v_max);
    const double pos = agent_pos(state, i) + speed * params_.dt;
    double lane = agent_lane(state, i) + a[1] * params_.dt;
    lane = std::clamp(lane, params_.lane_min, params_.lane_max);
    next.values[3 * i] = pos;
    next.values[3 * i + 1] = lane;
    next.values[3 * i + 2] = speed;
  }

  bool failure = false;
  for (int i = 0; i < n && !failure; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dpos = std::abs(agent_pos(next, i) - agent_pos(next, j));
      const double dlane = std::abs(agent_lane(next, i) - agent_lane(next, j));
      if (dpos < params_.length_envelope && dlane < params_.width_envelope) {
        failure = true;
        break;
      }
    }
  }
  // Running off the end of a merge ramp counts as a failed episode too.
  for (int i = 0; i < n && !failure; ++i) {
    if (agent_pos(next, i) > params_.lane_end_pos[i] &&
        std::abs(agent_lane(next, i) - params_.goal_lane[i]) >
            params_.goal_tolerance) {
      failure = true;
    }
  }

  if (failure) {
    next.values.back() = 1.0;
    next.terminal = true;
    result.terminal = true;
    result.rewards.assign(n, params_.collision_penalty);
    return result;
  }

  for (int i = 0; i < n; ++i) {
    const double lane_err = std::abs(agent_lane(next, i) - params_.goal_lane[i]);
    const double speed_err =
        std::abs(agent_speed(next, i) - params_.v_ref) / params_.v_max;
    result.rewards[i] = params_.w_lane * std::max(0.0, 1.0 - lane_err) +
                        params_.w_speed * std::max(0.0, 1.0 - speed_err);
  }

  if (next.depth >= params_.horizon) {
    next.terminal = true;
    result.terminal = true;
    bool all_on_goal = true;
    for (int i = 0; i < n; ++i) {
      if (std::abs(agent_lane(next, i) - params_.goal_lane[i]) >
          params_.goal_tolerance) {
        all_on_goal = false;
        break;
      }
    }
    if (all_on_goal) {
      // The bonus replaces the final shaping term, keeping every per-step
      // reward inside [-10, +10].
      for (int i = 0; i < n; ++i) result.rewards[i] = params_.success_bonus;
    }
  }
  return result;
}

bool CoopMergeEnv::episode_success(const State& final_state) const {
  return !failed(final_state) && final_state.depth >= params_.horizon;
}

}  // namespace cmcts::envs
