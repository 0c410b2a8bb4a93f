#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "strap/cost.hpp"
#include "strap/model.hpp"

namespace strap {

struct SolverBudget {
  int max_outer_retries = 10;
  int max_buffer_trials = 50;
  std::uint64_t rng_seed = 0;
};

// Fast feasible rearrangement solve from an arbitrary valid state to the
// instance goal. Greedy: repeatedly move the nearest object whose goal
// footprint is free; when stuck, break a dependency cycle by relocating the
// cycle member that blocks the most goals to a random buffer. Not optimal.
//
// `last_moved` (0 = none) is the object whose move produced `from`; the
// first returned action will not move it again.
std::optional<std::vector<Action>> solve(const State& from, const Instance& inst,
                                         const SolverBudget& budget, ObjectId last_moved = 0);

struct IterativeResult {
  std::optional<Plan> plan;
  std::uint64_t attempts = 0;
  std::uint64_t attempts_succeeded = 0;
};

// Baseline planner: re-run solve() from the instance start with fresh seeds
// until the timeout (or attempt cap, when nonzero), keep the cheapest plan.
IterativeResult solve_iterative(const Instance& inst, const CostModel& cm, double timeout_s,
                                std::uint64_t max_attempts, const SolverBudget& budget);

}  // namespace strap
