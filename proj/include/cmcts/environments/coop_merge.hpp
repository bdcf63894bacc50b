#pragma once

#include <string>
#include <vector>

#include "cmcts/environment.hpp"

namespace cmcts::envs {

// Desk-scale cooperative highway-merge task. Each agent drives a point
// vehicle with longitudinal position (m), continuous lane offset (lane
// units) and speed (m/s); actions are [acceleration, lane-change rate].
// Vehicles whose lane ends (on-ramp agents) must merge before running out
// of ramp. All constants live here so runs are reproducible from the docs.
struct MergeScenarioParams {
  std::string name = "merge";
  int agent_count = 2;

  std::vector<double> start_pos;
  std::vector<double> start_lane;
  std::vector<double> start_speed;
  std::vector<double> goal_lane;
  // Position where each agent's current lane ends; infinity for through
  // lanes. An agent past its lane end while still off the main lane has
  // failed (counted like a collision).
  std::vector<double> lane_end_pos;

  double lane_min = 0.0;
  double lane_max = 1.0;
  int horizon = 10;
  double dt = 1.0;

  double accel_limit = 2.0;      // action[0] in [-accel_limit, accel_limit]
  double lane_rate_limit = 0.5;  // action[1] in [-limit, limit]
  double v_ref = 10.0;
  double v_max = 15.0;

  // Collision envelope: |dpos| < length AND |dlane| < width.
  double length_envelope = 5.0;
  double width_envelope = 0.8;

  double collision_penalty = -10.0;
  double success_bonus = 10.0;
  double goal_tolerance = 0.25;

  // Per-step shaping weights (shaping stays within [-1, 1]).
  double w_lane = 0.3;
  double w_speed = 0.2;
};

class CoopMergeEnv : public Environment {
 public:
  explicit CoopMergeEnv(MergeScenarioParams params);

  const EnvironmentSpec& spec() const override { return spec_; }
  State initial_state() const override;
  StepResult step(const State& state, const JointAction& action,
                  RandomStream& rng) const override;

  // Success: horizon reached and nobody collided or ran off a ramp.
  bool episode_success(const State& final_state) const override;

  const MergeScenarioParams& params() const { return params_; }

  // State layout: [pos, lane, speed] per agent, then a failure flag.
  static double agent_pos(const State& s, int agent) {
    return s.values[3 * agent];
  }
  static double agent_lane(const State& s, int agent) {
    return s.values[3 * agent + 1];
  }
  static double agent_speed(const State& s, int agent) {
    return s.values[3 * agent + 2];
  }
  static bool failed(const State& s) { return s.values.back() != 0.0; }

 private:
  MergeScenarioParams params_;
  EnvironmentSpec spec_;
};

}  // namespace cmcts::envs
