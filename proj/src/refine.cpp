#include "strap/refine.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <initializer_list>
#include <limits>
#include <unordered_map>

namespace strap {

namespace {

constexpr int kMaxPasses = 20;
constexpr double kImproveTol = 1e-12;

double anchor_sum(const Pose& p, const std::vector<Pose>& anchors, Embodiment embodiment,
                  const Workspace& w) {
  double sum = 0.0;
  for (const Pose& a : anchors) sum += travel_cost(p, a, embodiment, w);
  return sum;
}

std::uint64_t hash_doubles(std::initializer_list<double> values) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (double v : values) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xFF;
      h *= 0x100000001B3ull;
    }
  }
  return h;
}

// Seed that identifies the interval by its current geometry, so identical
// intervals always see identical draws.
std::uint64_t interval_seed(std::uint64_t base, const Pose& incumbent,
                            const std::vector<Pose>& anchors) {
  std::uint64_t h = hash_doubles({incumbent.x, incumbent.y});
  for (const Pose& a : anchors) h = h * 31 + hash_doubles({a.x, a.y});
  return mix_seed(base, h);
}

// Deterministic descent on the anchor sum within the admissible region.
template <typename AdmitFn>
Pose polish(Pose p, const AdmitFn& admissible, const std::vector<Pose>& anchors,
            const Instance& inst, const CostModel& cm) {
  double best = anchor_sum(p, anchors, cm.embodiment, inst.workspace);
  double step = std::max(inst.workspace.width, inst.workspace.height) / 8.0;
  while (step > 1e-9) {
    bool moved = false;
    for (const auto& [dx, dy] : std::initializer_list<std::pair<double, double>>{
             {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}) {
      const Pose cand{p.x + dx * step, p.y + dy * step};
      if (!admissible(cand)) continue;
      const double sum = anchor_sum(cand, anchors, cm.embodiment, inst.workspace);
      if (sum < best - 1e-15) {
        best = sum;
        p = cand;
        moved = true;
        break;
      }
    }
    if (!moved) step *= 0.5;
  }
  return p;
}

// The relocated buffer must be collision-free at every arrangement it lives
// through. The constraint set is already sufficient for that; replaying the
// rewritten sequence is the direct check.
bool replays_ok(const std::vector<Action>& actions, const Instance& inst) {
  Arrangement arr = inst.start;
  for (const Action& act : actions) {
    if (!pose_close(act.pick, arr.of(act.object), kPickTol)) return false;
    if (!placement_free(act.place, inst.radius(act.object), arr, inst, act.object)) return false;
    arr.of(act.object) = act.place;
  }
  return true;
}

}  // namespace

BufferInterval make_interval(const std::vector<Action>& actions, int to_buf_index,
                             int out_index) {
  BufferInterval interval;
  interval.object = actions[static_cast<std::size_t>(to_buf_index)].object;
  interval.to_buf_index = to_buf_index;
  interval.out_index = out_index;

  const Pose p1 = actions[static_cast<std::size_t>(to_buf_index)].pick;
  const Pose p4 = actions[static_cast<std::size_t>(out_index)].place;
  if (out_index == to_buf_index + 1) {
    interval.anchors = {p1, p4};
  } else {
    const Pose p2 = actions[static_cast<std::size_t>(out_index - 1)].place;
    const Pose p3 = actions[static_cast<std::size_t>(to_buf_index + 1)].pick;
    interval.anchors = {p1, p2, p3, p4};
  }
  return interval;
}

ConstraintSet make_constraints(const std::vector<Action>& actions,
                               const std::vector<Arrangement>& history, ObjectId object,
                               int to_buf_index, int out_index, const Instance& inst) {
  ConstraintSet cs;
  // Arrangement right after the to-buffer action, everything but the object.
  const Arrangement& at_entry = history[static_cast<std::size_t>(to_buf_index + 1)];
  const int n = inst.object_count();
  for (ObjectId j = 1; j <= n; ++j) {
    if (j == object) continue;
    cs.obstacles.emplace_back(at_entry.of(j), inst.radius(j));
  }
  for (int i = to_buf_index; i < out_index; ++i) {
    const Action& act = actions[static_cast<std::size_t>(i)];
    cs.obstacles.emplace_back(act.place, inst.radius(act.object));
  }
  return cs;
}

std::pair<Plan, bool> single_pass(const Plan& plan, const Instance& inst, const CostModel& cm,
                                  int sample_count, std::uint64_t rng_seed) {
  std::vector<Action> actions = plan.actions;
  const int m = static_cast<int>(actions.size());
  double current_total = g_cost(inst.robot_start, actions, cm, inst.workspace).total();
  bool changed = false;

  std::unordered_map<ObjectId, int> last_move;         // B
  std::vector<Arrangement> history;                    // H; history[t] = after t actions
  history.reserve(static_cast<std::size_t>(m) + 1);
  history.push_back(inst.start);
  Arrangement arr_current = inst.start;

  for (int i = 0; i < m; ++i) {
    const ObjectId k = actions[static_cast<std::size_t>(i)].object;
    if (auto it = last_move.find(k); it != last_move.end()) {
      const int to_buf = it->second;  // k entered a buffer there
      const BufferInterval interval = make_interval(actions, to_buf, i);
      const ConstraintSet cs = make_constraints(actions, history, k, to_buf, i, inst);

      const double r = inst.radius(k);
      const Pose incumbent = actions[static_cast<std::size_t>(to_buf)].place;
      const double incumbent_sum =
          anchor_sum(incumbent, interval.anchors, cm.embodiment, inst.workspace);

      Pose best_pose = incumbent;
      double best_sum = incumbent_sum;
      if (inst.workspace.width >= 2.0 * r && inst.workspace.height >= 2.0 * r) {
        // The relocated buffer becomes the place of the to-buffer action and
        // the pick of the out action; coinciding with their counterparts
        // would degenerate those actions.
        const Pose pick_before = actions[static_cast<std::size_t>(to_buf)].pick;
        const Pose place_after = actions[static_cast<std::size_t>(i)].place;
        auto admissible = [&](const Pose& cand) {
          if (!in_bounds(cand, r, inst.workspace)) return false;
          if (pose_close(cand, pick_before, kPickTol)) return false;
          if (pose_close(cand, place_after, kPickTol)) return false;
          return cs.admits(cand, r);
        };
        auto consider = [&](const Pose& cand) {
          if (!admissible(cand)) return;
          const double sum = anchor_sum(cand, interval.anchors, cm.embodiment, inst.workspace);
          if (sum < best_sum) { best_sum = sum; best_pose = cand; }
        };

        // Grid sweep covers every pocket at least half a radius wide.
        const double step = std::max(r * 0.5, 1e-3);
        for (double x = r; x <= inst.workspace.width - r + 1e-12; x += step) {
          for (double y = r; y <= inst.workspace.height - r + 1e-12; y += step) {
            consider({x, y});
          }
        }
        Rng rng(interval_seed(rng_seed, incumbent, interval.anchors));
        for (int s = 0; s < sample_count; ++s) {
          consider({rng.uniform(r, inst.workspace.width - r),
                    rng.uniform(r, inst.workspace.height - r)});
        }
        best_pose = polish(best_pose, admissible, interval.anchors, inst, cm);
        best_sum = anchor_sum(best_pose, interval.anchors, cm.embodiment, inst.workspace);
      }

      if (best_sum < incumbent_sum - kImproveTol) {
        std::vector<Action> rewritten = actions;
        rewritten[static_cast<std::size_t>(to_buf)].place = best_pose;
        rewritten[static_cast<std::size_t>(i)].pick = best_pose;
        const double new_total = g_cost(inst.robot_start, rewritten, cm, inst.workspace).total();
        // The anchor sum is local; adopt only if the whole plan does not get
        // more expensive and still replays.
        if (new_total <= current_total + kImproveTol && replays_ok(rewritten, inst)) {
          actions = std::move(rewritten);
          changed = true;
          current_total = new_total;
          for (int t = to_buf + 1; t <= i && t < static_cast<int>(history.size()); ++t) {
            history[static_cast<std::size_t>(t)].of(k) = best_pose;
          }
        }
      }
    }
    last_move[k] = i;
    arr_current.of(k) = actions[static_cast<std::size_t>(i)].place;
    history.push_back(arr_current);
  }

  Plan out;
  out.actions = std::move(actions);
  out.total_cost = current_total;
  out.provenance = plan.provenance;
  return {std::move(out), changed};
}

Plan refine_plan(const Plan& plan, const Instance& inst, const CostModel& cm, int sample_count,
                 std::uint64_t rng_seed) {
  const ValidationResult check = validate_plan(plan, inst);
  if (!check.ok) {
    throw Error(ErrorCode::InvalidPlan, "refine input does not validate: " + check.message);
  }

  Plan current = plan;
  current.total_cost = g_cost(inst.robot_start, current.actions, cm, inst.workspace).total();
  // Loop until a pass adopts nothing: the result is a true fixed point, so
  // re-refining it reproduces that last pass verbatim.
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    auto [next, changed] = single_pass(current, inst, cm, sample_count, rng_seed);
    current = std::move(next);
    if (!changed) break;
  }
  current.provenance = Provenance::Refined;
  return current;
}

}  // namespace strap
