#pragma once

#include "cmcts/environment.hpp"

namespace cmcts::envs {

struct NarrowPassageParams {
  int horizon = 6;
  // In-band action width as a fraction of the action range.
  double band_fraction = 0.05;
  // The corridor slot centers alternate between +amplitude and -amplitude;
  // the first slot is reached from the start position 0.
  double slot_amplitude = 0.475;
  // Landing noise scale; 0 keeps the transition deterministic and the rng
  // untouched.
  double noise = 0.0;
};

// Precision corridor: a single agent threads a zigzag of narrow slots. At
// depth t the action must land the position inside slot t+1 (half-width
// band_fraction * range / 2) to earn +1 and continue; any other action
// terminates the episode with reward 0. Landing near the slot edge that
// faces away from the next slot leaves part of the next band outside the
// action bounds, so positioning inside a slot matters.
class NarrowPassageEnv : public Environment {
 public:
  explicit NarrowPassageEnv(NarrowPassageParams params = {},
                            std::string name = "narrow-5pct");

  const EnvironmentSpec& spec() const override { return spec_; }
  State initial_state() const override;
  StepResult step(const State& state, const JointAction& action,
                  RandomStream& rng) const override;

  const NarrowPassageParams& params() const { return params_; }

  // Center of slot k (k = 1 is the first gate).
  double slot_center(int k) const;
  // Half-width of the in-band landing zone.
  double band_half_width() const;

 private:
  NarrowPassageParams params_;
  EnvironmentSpec spec_;
};

}  // namespace cmcts::envs
