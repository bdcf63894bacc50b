#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "cmcts/environment.hpp"
#include "cmcts/rng.hpp"
#include "cmcts/search_config.hpp"
#include "cmcts/tree.hpp"

namespace cmcts {

// Thrown by a simulation backend to abandon the current iteration without
// touching tree statistics. Anything else thrown during an iteration
// propagates to the caller.
struct IterationAborted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Q + c * sqrt(2 ln N(s) / N(s,a)). node_visit_count is real-valued so the
// rule can be evaluated at arbitrary points; the tree itself keeps integer
// counts. Throws on an unvisited stat (callers must expand those first).
double uct_value(const ActionStat& stat, double node_visit_count,
                 double exploration_c);

// Index of the agent's stat maximizing uct_value; ties go to the lowest
// insertion index. Pre: every stat for the agent has visit_count > 0.
std::size_t select_child_index(const TreeNode& node, int agent,
                               const SearchConfig& config);
const ActionStat& select_child(const TreeNode& node, int agent,
                               const SearchConfig& config);

// True when the agent's action set at this node is still below
// max(initial_action_count, floor(pw_coefficient * N(s)^pw_exponent)).
bool should_widen(const TreeNode& node, int agent, const SearchConfig& config);

// One independent uniform draw per dimension, in declaration order.
ContinuousAction sample_action(std::span<const ActionBounds> bounds,
                               RandomStream& rng);

// Random rollout from `state` to the planning horizon or a terminal state;
// returns the per-agent discounted reward sum, discounting from the first
// simulated step. When `trace` is given, the simulated steps are appended.
std::vector<double> simulate(const Environment& env, const State& state,
                             const SearchConfig& config, RandomStream& rng,
                             Trajectory* trace = nullptr);

// exp(-bandwidth * ||a - b||^2) on actions normalized per dimension to
// [0, 1] by `bounds`. A zero-width dimension contributes zero distance.
double similarity(const ContinuousAction& a, const ContinuousAction& b,
                  double bandwidth, std::span<const ActionBounds> bounds);

// Kernel-weighted sharing of `return_value` from the source stat to every
// other stat of the same agent whose similarity clears the floor.
void similarity_update(TreeNode& node, int agent, std::size_t source_index,
                       double return_value, const SearchConfig& config,
                       std::span<const ActionBounds> bounds);

// One step of the backpropagated path: the node, the per-agent indices of
// the chosen stats, and the per-agent reward collected by that step.
struct PathEntry {
  TreeNode* node = nullptr;
  std::vector<std::size_t> chosen;
  std::vector<double> step_rewards;
};

// Walks the path deepest-first, folding the return-to-go
// G = r + discount * G from `leaf_return`, and applies to every path node:
// node visit increment, direct update of the chosen stat (weight
// `direct_weight`), then similarity updates to the agent's other stats.
void backpropagate(std::span<PathEntry> path,
                   const std::vector<double>& leaf_return,
                   const SearchConfig& config,
                   std::span<const ActionBounds> bounds,
                   double direct_weight = 1.0);

// Context handed to pluggable simulation backends so they can derive their
// own random streams deterministically.
struct SimulationContext {
  std::uint64_t root_seed = 0;
  int tree_index = 0;
  std::uint64_t iteration = 0;
};

using SimulationFn = std::function<std::vector<double>(
    const Environment&, const State&, const SearchConfig&,
    const SimulationContext&)>;

struct SearchResult {
  JointAction best_action;
  std::vector<std::size_t> best_indices;  // per agent, index into root stats
  std::uint64_t completed_iterations = 0;
  std::uint64_t aborted_iterations = 0;
};

// Single-threaded continuous-domain MCTS over one tree. `tree_index` prefixes
// every derived random stream, so independent trees grown from the same seed
// never share draws; parallel strategies pass their worker index here and
// the plain single-threaded search is tree 0.
class MctsSearch {
 public:
  MctsSearch(const Environment& env, State root_state, SearchConfig config,
             int tree_index = 0, SimulationFn simulation = {});

  // One select/expand/simulate/backpropagate pass. Returns the iteration's
  // trajectory (empty steps if the iteration was aborted by the simulation
  // backend).
  Trajectory step_iteration();

  // Runs the configured iteration budget and returns the best joint action.
  SearchResult run();

  // Per agent: root action maximizing value_estimate among stats with at
  // least one direct visit, ties to the lowest insertion index.
  std::vector<std::size_t> best_root_indices() const;
  JointAction best_joint_action() const;

  const TreeNode& root() const { return *root_; }
  // Transfers tree ownership; the search is spent afterwards.
  std::unique_ptr<TreeNode> release_root() { return std::move(root_); }
  const SearchConfig& config() const { return config_; }
  int tree_index() const { return tree_index_; }
  std::uint64_t completed_iterations() const { return completed_; }
  std::uint64_t aborted_iterations() const { return aborted_; }

  // Direct-update weight used at backpropagation; leaf-parallel strategies
  // set this to the worker count in their alternative visit-accounting mode.
  void set_direct_update_weight(double w) { direct_weight_ = w; }

 private:
  struct WidenRecord {
    TreeNode* node = nullptr;
    int agent = 0;
    std::size_t added = 0;
  };

  // Per-agent action choice at one node: widen when allowed, otherwise take
  // the first never-directly-visited stat, otherwise UCT.
  std::size_t choose_action_index(TreeNode& node, int agent,
                                  std::vector<WidenRecord>& widened);

  const Environment& env_;
  SearchConfig config_;
  int tree_index_;
  std::unique_ptr<TreeNode> root_;
  RandomStream expand_stream_;
  SimulationFn simulation_;
  double direct_weight_ = 1.0;
  std::uint64_t iteration_ = 0;
  std::uint64_t completed_ = 0;
  std::uint64_t aborted_ = 0;
};

struct SearchOutcome {
  std::unique_ptr<TreeNode> root;
  JointAction best_action;
  SearchResult result;
};

// Convenience wrapper: full search, returns the tree and the chosen action.
SearchOutcome run_search(const Environment& env, const State& root_state,
                         const SearchConfig& config, int tree_index = 0,
                         SimulationFn simulation = {});

}  // namespace cmcts
