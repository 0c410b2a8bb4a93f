#include "strap/local_solver.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "strap/rng.hpp"

namespace strap {

namespace {

// Objects that lie on a directed cycle of the blocked-by relation
// (k -> j when j's current pose overlaps k's goal footprint), restricted to
// misplaced objects. When no object is movable such a cycle always exists.
std::vector<ObjectId> cycle_members(const std::vector<ObjectId>& misplaced,
                                    const Arrangement& arr, const Instance& inst) {
  const int n = inst.object_count();
  std::vector<char> is_misplaced(static_cast<std::size_t>(n + 1), 0);
  for (ObjectId k : misplaced) is_misplaced[static_cast<std::size_t>(k)] = 1;

  std::vector<std::vector<ObjectId>> blocked_by(static_cast<std::size_t>(n + 1));
  for (ObjectId k : misplaced) {
    for (ObjectId j : misplaced) {
      if (j == k) continue;
      if (disks_collide(inst.goal.of(k), inst.radius(k), arr.of(j), inst.radius(j))) {
        blocked_by[static_cast<std::size_t>(k)].push_back(j);
      }
    }
  }

  std::vector<ObjectId> members;
  for (ObjectId k : misplaced) {
    // k is on a cycle iff k is reachable from k along blocked-by edges.
    std::vector<char> seen(static_cast<std::size_t>(n + 1), 0);
    std::vector<ObjectId> stack(blocked_by[static_cast<std::size_t>(k)]);
    bool on_cycle = false;
    while (!stack.empty() && !on_cycle) {
      ObjectId v = stack.back();
      stack.pop_back();
      if (v == k) { on_cycle = true; break; }
      if (seen[static_cast<std::size_t>(v)]) continue;
      seen[static_cast<std::size_t>(v)] = 1;
      for (ObjectId w : blocked_by[static_cast<std::size_t>(v)]) stack.push_back(w);
    }
    if (on_cycle) members.push_back(k);
  }
  return members;
}

int goals_blocked_by(ObjectId k, const std::vector<ObjectId>& misplaced, const Arrangement& arr,
                     const Instance& inst) {
  int count = 0;
  for (ObjectId i : misplaced) {
    if (i == k) continue;
    if (disks_collide(inst.goal.of(i), inst.radius(i), arr.of(k), inst.radius(k))) ++count;
  }
  return count;
}

std::optional<Pose> sample_solver_buffer(ObjectId victim, const Arrangement& arr,
                                         const std::vector<ObjectId>& misplaced,
                                         const Instance& inst, int max_trials, Rng& rng) {
  const double r = inst.radius(victim);
  const Workspace& w = inst.workspace;
  if (w.width < 2.0 * r || w.height < 2.0 * r) return std::nullopt;

  // First half of the trials additionally avoids the goal footprints of
  // misplaced objects so the buffer does not manufacture new blocks.
  const int strict_trials = max_trials / 2;
  for (int t = 0; t < max_trials; ++t) {
    Pose p{rng.uniform(r, w.width - r), rng.uniform(r, w.height - r)};
    if (!placement_free(p, r, arr, inst, victim)) continue;
    if (pose_close(p, arr.of(victim), kPickTol)) continue;
    if (t < strict_trials) {
      bool clears_goals = true;
      for (ObjectId i : misplaced) {
        if (disks_collide(p, r, inst.goal.of(i), inst.radius(i))) { clears_goals = false; break; }
      }
      if (!clears_goals) continue;
    }
    return p;
  }
  return std::nullopt;
}

std::optional<std::vector<Action>> attempt(const State& from, const Instance& inst,
                                           const SolverBudget& budget, ObjectId banned_first,
                                           Rng& rng) {
  Arrangement arr = from.arrangement;
  Pose robot = from.robot;
  std::vector<Action> actions;
  ObjectId last_moved = banned_first;
  const int n = inst.object_count();
  const std::size_t action_cap = static_cast<std::size_t>(4 * n + 16);

  while (actions.size() <= action_cap) {
    std::vector<ObjectId> misplaced;
    for (ObjectId k = 1; k <= n; ++k) {
      if (!at_goal(arr.of(k), k, inst)) misplaced.push_back(k);
    }
    if (misplaced.empty()) return actions;

    // Move the movable object with the cheapest next travel leg.
    ObjectId best_k = 0;
    double best_leg = std::numeric_limits<double>::infinity();
    for (ObjectId k : misplaced) {
      if (k == last_moved) continue;
      if (!placement_free(inst.goal.of(k), inst.radius(k), arr, inst, k)) continue;
      const double leg = travel_cost(robot, arr.of(k), inst.embodiment, inst.workspace);
      if (leg < best_leg) { best_leg = leg; best_k = k; }
    }
    if (best_k != 0) {
      actions.push_back({best_k, arr.of(best_k), inst.goal.of(best_k)});
      arr.of(best_k) = inst.goal.of(best_k);
      robot = inst.goal.of(best_k);
      last_moved = best_k;
      continue;
    }

    // Stuck: every misplaced goal is blocked, so a dependency cycle exists.
    // Relocate the cycle member blocking the most goals.
    std::vector<ObjectId> cyc = cycle_members(misplaced, arr, inst);
    ObjectId victim = 0;
    int victim_blocks = -1;
    for (ObjectId k : cyc) {
      if (k == last_moved) continue;
      const int b = goals_blocked_by(k, misplaced, arr, inst);
      if (b > victim_blocks) { victim_blocks = b; victim = k; }
    }
    if (victim == 0) return std::nullopt;

    std::optional<Pose> buf =
        sample_solver_buffer(victim, arr, misplaced, inst, budget.max_buffer_trials, rng);
    if (!buf) return std::nullopt;
    actions.push_back({victim, arr.of(victim), *buf});
    arr.of(victim) = *buf;
    robot = *buf;
    last_moved = victim;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<Action>> solve(const State& from, const Instance& inst,
                                         const SolverBudget& budget, ObjectId last_moved) {
  for (int retry = 0; retry < budget.max_outer_retries; ++retry) {
    Rng rng(mix_seed(budget.rng_seed, static_cast<std::uint64_t>(retry)));
    auto actions = attempt(from, inst, budget, last_moved, rng);
    if (actions) return actions;
  }
  return std::nullopt;
}

IterativeResult solve_iterative(const Instance& inst, const CostModel& cm, double timeout_s,
                                std::uint64_t max_attempts, const SolverBudget& budget) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  IterativeResult result;
  const State s0{inst.robot_start, inst.start};

  while (true) {
    if (max_attempts != 0 && result.attempts >= max_attempts) break;
    const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    if (elapsed >= timeout_s) break;

    SolverBudget b = budget;
    b.rng_seed = mix_seed(budget.rng_seed, result.attempts);
    ++result.attempts;
    auto actions = solve(s0, inst, b);
    if (!actions) continue;
    ++result.attempts_succeeded;
    const double cost = g_cost(inst.robot_start, *actions, cm, inst.workspace).total();
    if (!result.plan || cost < result.plan->total_cost) {
      result.plan = Plan{std::move(*actions), cost, Provenance::Raw};
    }
  }
  return result;
}

}  // namespace strap
