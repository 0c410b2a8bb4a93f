#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "strap/cost.hpp"
#include "strap/local_solver.hpp"
#include "strap/model.hpp"
#include "strap/rng.hpp"

namespace strap {

struct SearchConfig {
  double timeout_s = 300.0;
  // Secondary stop: iteration cap (0 = none). Used as a deterministic
  // stand-in for the wall-clock timeout; reported as "timeout".
  std::uint64_t max_iterations = 0;
  // Memory guard on created nodes (0 = none); reported as "budget".
  std::uint64_t max_nodes = 1'500'000;
  // Buffer samples per blocked object; 0 = object count.
  int samples_per_object = 0;
  std::uint64_t rng_seed = 0;
  bool goal_attempting = true;
  double prune_epsilon = 1e-9;
  // Rejection-sampling trials per requested buffer sample.
  int buffer_retry_budget = 20;
  SolverBudget attempt_budget;
};

struct SearchStats {
  std::uint64_t iterations = 0;
  std::uint64_t expansions = 0;
  std::uint64_t goal_attempts = 0;
  std::uint64_t attempts_succeeded = 0;
  std::uint64_t nodes_created = 0;
  std::size_t queue_peak = 0;
  std::vector<std::pair<double, double>> best_cost_trace;  // (elapsed_s, cost)
  std::string terminated;  // goal | timeout | exhausted | budget
};

struct PlanResult {
  std::optional<Plan> plan;
  SearchStats stats;
};

struct SearchNode {
  State state;
  double g = 0.0;
  double h = 0.0;
  const SearchNode* parent = nullptr;
  std::optional<Action> incoming;
  std::uint64_t seq = 0;  // insertion order, tie-break

  double f() const { return g + h; }
  ObjectId moved_object() const { return incoming ? incoming->object : 0; }
};

// A* over (robot pose + arrangement) states with lazy buffer sampling,
// per-iteration goal attempting, and best-plan queue pruning.
class Searcher {
 public:
  Searcher(const Instance& inst, const CostModel& cm, const SearchConfig& cfg);

  PlanResult run();

  // Exposed for tests.
  const SearchNode* root() const { return root_; }
  std::vector<SearchNode*> expand(const SearchNode* node);
  std::optional<Pose> sample_buffer(ObjectId k, const SearchNode* node);
  static std::vector<Action> reconstruct_path(const SearchNode* node);
  bool goal_attempt(const SearchNode* node);
  const std::optional<Plan>& best_plan() const { return best_; }
  const SearchStats& stats() const { return stats_; }

 private:
  struct HeapEntry {
    double f;
    double h;
    std::uint64_t seq;
    SearchNode* node;
  };
  struct HeapCompare {
    bool operator()(const HeapEntry& a, const HeapEntry& b) const {
      if (a.f != b.f) return a.f > b.f;
      if (a.h != b.h) return a.h > b.h;
      return a.seq > b.seq;
    }
  };

  // Applies the prune threshold and duplicate discipline; on acceptance the
  // candidate moves into the arena and the open list. Rejected candidates are
  // never allocated.
  SearchNode* try_enqueue(SearchNode&& cand);
  bool below_prune_threshold(double f) const;
  void adopt(Plan plan, double elapsed_s);
  double elapsed() const;

  const Instance& inst_;
  CostModel cm_;
  SearchConfig cfg_;
  int samples_per_object_;

  std::deque<SearchNode> arena_;
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapCompare> heap_;
  std::unordered_map<StateKey, std::pair<SearchNode*, double>> open_index_;  // key -> (node, f)
  std::unordered_map<StateKey, double> closed_;                              // key -> g
  SearchNode* root_ = nullptr;
  std::optional<Plan> best_;
  double best_cost_;
  Rng rng_;
  SearchStats stats_;
  std::uint64_t next_seq_ = 0;
  std::chrono::steady_clock::time_point start_;
};

// Convenience wrapper: run one STRAP search on the instance.
PlanResult plan(const Instance& inst, const CostModel& cm, const SearchConfig& cfg);

}  // namespace strap
