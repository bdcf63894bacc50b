#pragma once

#include <condition_variable>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "cmcts/search.hpp"

namespace cmcts {

enum class StrategyKind { kSingle, kLeafMean, kLeafMax, kRootMerge, kRootVote };

std::string to_string(StrategyKind kind);
StrategyKind strategy_from_string(const std::string& name);

enum class LeafAggregation { kMean, kMax };

// Visit accounting for leaf-parallel backpropagation: one visit per
// aggregated backpropagation (default), or one per worker.
enum class LeafVisitMode { kPerBackprop, kPerWorker };

struct StrategyConfig {
  StrategyKind kind = StrategyKind::kSingle;
  int worker_count = 1;
  // Root parallelism: split the iteration budget across trees instead of
  // giving each tree the full budget.
  bool divided_budget = false;
  LeafVisitMode leaf_visit_mode = LeafVisitMode::kPerBackprop;

  void validate() const;
};

// Persistent fork/join pool. run_indexed executes fn(0..count-1), blocking
// until every index has finished; the first task exception is rethrown.
class WorkerPool {
 public:
  explicit WorkerPool(int thread_count);
  ~WorkerPool();
  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  void run_indexed(int count, const std::function<void(int)>& fn);

 private:
  void worker_loop();

  std::mutex mutex_;
  std::condition_variable work_cv_;
  std::condition_variable done_cv_;
  const std::function<void(int)>* job_ = nullptr;
  int job_count_ = 0;
  int next_index_ = 0;
  int completed_ = 0;
  bool stop_ = false;
  std::exception_ptr first_error_;
  std::vector<std::thread> threads_;
};

// Per-agent fold of per-worker simulation returns, in worker index order.
std::vector<double> aggregate_leaf_rewards(
    const std::vector<std::vector<double>>& per_worker, LeafAggregation agg);

// worker_count independent rollouts from copies of `state`, each on its own
// derived stream, joined and folded into one per-agent reward. Any worker
// failure raises IterationAborted so the owning search can drop the
// iteration without touching tree statistics.
std::vector<double> leaf_parallel_simulate(const Environment& env,
                                           const State& state,
                                           const SearchConfig& config,
                                           const SimulationContext& context,
                                           int worker_count,
                                           LeafAggregation aggregation,
                                           WorkerPool* pool = nullptr);

// Simulation backend plugging leaf parallelization into MctsSearch.
SimulationFn make_leaf_parallel_simulation(LeafAggregation aggregation,
                                           int worker_count,
                                           std::shared_ptr<WorkerPool> pool);

// Root-action statistics one tree hands to the merge step: per agent, the
// stats with at least one direct visit, in insertion order.
struct RootSummary {
  int tree_id = 0;
  std::vector<std::vector<ActionStat>> per_agent;
};

RootSummary summarize_root(const TreeNode& root, int tree_id);

// Pairwise action-similarity matrix plus the vote vector of Algorithm-style
// final selection. Symmetric with unit diagonal by construction; validate()
// asserts it in test builds.
struct SimilarityMatrix {
  std::size_t size = 0;
  std::vector<double> values;  // row-major
  std::vector<double> votes;

  double at(std::size_t i, std::size_t j) const {
    return values[i * size + j];
  }
  void validate() const;
};

SimilarityMatrix build_similarity_matrix(
    const std::vector<ContinuousAction>& actions, double bandwidth,
    std::span<const ActionBounds> bounds);

// Pools every tree's root actions and picks the argmax of the
// similarity-merged value Q_sim, computed in order-independent batch form
// from the pre-merge statistics.
ContinuousAction similarity_merge(const std::vector<RootSummary>& summaries,
                                  int agent, const SearchConfig& config,
                                  std::span<const ActionBounds> bounds);

// Each tree submits its best root action; the winner maximizes the
// similarity-weighted sum of submitted action values (S*V).
ContinuousAction similarity_vote(const std::vector<RootSummary>& summaries,
                                 int agent, const SearchConfig& config,
                                 std::span<const ActionBounds> bounds);

enum class RootMergeKind { kSimilarityMerge, kSimilarityVote };

struct RootParallelResult {
  JointAction action;
  std::vector<RootSummary> summaries;
  int failed_trees = 0;
  std::vector<std::string> warnings;
};

// worker_count fully independent searches from copies of the root, merged
// per agent by the chosen rule. Failed trees are dropped with a warning;
// only a total failure is an error.
RootParallelResult root_parallel_search(const Environment& env,
                                        const State& root_state,
                                        const SearchConfig& config,
                                        int worker_count, RootMergeKind merge,
                                        bool divided_budget = false);

// Uniform entry point for all five strategies.
JointAction plan_joint_action(const Environment& env, const State& state,
                              const SearchConfig& config,
                              const StrategyConfig& strategy);

}  // namespace cmcts
