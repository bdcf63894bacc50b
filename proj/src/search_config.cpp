#include "cmcts/search_config.hpp"

#include <stdexcept>
#include <string>

namespace cmcts {

namespace {

[[noreturn]] void reject(const std::string& what) {
  throw std::invalid_argument("SearchConfig: " + what);
}

}  // namespace

void SearchConfig::validate() const {
  if (!(uct_exploration_c > 0.0)) reject("uct_exploration_c must be > 0");
  if (!(pw_coefficient > 0.0)) reject("pw_coefficient must be > 0");
  if (!(pw_exponent >= 0.0 && pw_exponent <= 1.0)) {
    reject("pw_exponent must be in [0, 1]");
  }
  if (!(kernel_bandwidth > 0.0)) reject("kernel_bandwidth must be > 0");
  if (!(discount_factor > 0.0 && discount_factor <= 1.0)) {
    reject("discount_factor must be in (0, 1]");
  }
  if (planning_horizon < 1) reject("planning_horizon must be >= 1");
  if (iteration_budget < 1) reject("iteration_budget must be >= 1");
  if (initial_action_count < 1) reject("initial_action_count must be >= 1");
  // 1.0 is allowed as the documented off switch for similarity updates.
  if (!(similarity_floor >= 0.0 && similarity_floor <= 1.0)) {
    reject("similarity_floor must be in [0, 1]");
  }
}

}  // namespace cmcts
