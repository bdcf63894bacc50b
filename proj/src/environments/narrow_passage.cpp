#include "cmcts/environments/narrow_passage.hpp"

#include <cmath>
#include <stdexcept>

namespace cmcts::envs {

NarrowPassageEnv::NarrowPassageEnv(NarrowPassageParams params, std::string name)
    : params_(params) {
  if (params_.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (!(params_.band_fraction > 0.0 && params_.band_fraction < 1.0)) {
    throw std::invalid_argument("band_fraction must be in (0, 1)");
  }
  spec_.name = std::move(name);
  spec_.agent_count = 1;
  spec_.action_dimension = 1;
  spec_.action_bounds = {{-1.0, 1.0}};
  spec_.horizon = params_.horizon;
}

State NarrowPassageEnv::initial_state() const {
  State s;
  s.values = {0.0};
  return s;
}

double NarrowPassageEnv::slot_center(int k) const {
  if (k <= 0) return 0.0;
  return (k % 2 == 1) ? params_.slot_amplitude : -params_.slot_amplitude;
}

double NarrowPassageEnv::band_half_width() const {
  const double range = spec_.action_bounds[0].hi - spec_.action_bounds[0].lo;
  return 0.5 * params_.band_fraction * range;
}

StepResult NarrowPassageEnv::step(const State& state, const JointAction& action,
                                  RandomStream& rng) const {
  if (state.terminal) throw std::logic_error("step on terminal state");
  const double a = action.at(0).values.at(0);
  if (a < spec_.action_bounds[0].lo || a > spec_.action_bounds[0].hi) {
    throw std::domain_error("action out of bounds");
  }

  const double x = state.values.at(0);
  double landing = x + a;
  if (params_.noise > 0.0) {
    landing += params_.noise * (2.0 * rng.next_double() - 1.0);
  }

  const int next_depth = state.depth + 1;
  const bool in_band =
      std::abs(landing - slot_center(next_depth)) <= band_half_width();

  StepResult result;
  result.next_state.values = {landing};
  result.next_state.depth = next_depth;
  result.next_state.terminal = !in_band || next_depth >= params_.horizon;
  result.rewards = {in_band ? 1.0 : 0.0};
  result.terminal = result.next_state.terminal;
  return result;
}

}  // namespace cmcts::envs
