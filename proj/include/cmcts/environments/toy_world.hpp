#pragma once

#include "cmcts/environment.hpp"

namespace cmcts::envs {

// One-step scalar bandit with reward(a) = 1 - (a - 0.7)^2 on [0, 1]. The
// analytic optimum is known in closed form, which makes this the oracle
// world for convergence tests. State layout: values[0] = last action taken.
class ToyParabolaWorld : public Environment {
 public:
  ToyParabolaWorld();

  const EnvironmentSpec& spec() const override { return spec_; }
  State initial_state() const override;
  StepResult step(const State& state, const JointAction& action,
                  RandomStream& rng) const override;

  // Success means the executed action landed within 0.05 of the optimum.
  bool episode_success(const State& final_state) const override;

  static double reward(double action) {
    return 1.0 - (action - 0.7) * (action - 0.7);
  }

 private:
  EnvironmentSpec spec_;
};

struct ToyOptimum {
  double action = 0.0;
  double value = 0.0;
};

// Analytic optimum of the toy world: (0.7, 1.0).
ToyOptimum toy_world_optimal();

}  // namespace cmcts::envs
