#include "strap/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>

namespace strap {

bool is_valid_arrangement(const Arrangement& a, const Instance& inst) {
  const int n = inst.object_count();
  if (a.size() != n) return false;
  for (ObjectId i = 1; i <= n; ++i) {
    if (!in_bounds(a.of(i), inst.radius(i), inst.workspace)) return false;
    for (ObjectId j = i + 1; j <= n; ++j) {
      if (disks_collide(a.of(i), inst.radius(i), a.of(j), inst.radius(j))) return false;
    }
  }
  return true;
}

bool placement_free(const Pose& p, double r, const Arrangement& a, const Instance& inst,
                    ObjectId ignore) {
  if (!in_bounds(p, r, inst.workspace)) return false;
  const int n = a.size();
  for (ObjectId j = 1; j <= n; ++j) {
    if (j == ignore) continue;
    if (disks_collide(p, r, a.of(j), inst.radius(j))) return false;
  }
  return true;
}

void validate_instance(const Instance& inst) {
  const int n = inst.object_count();
  if (n <= 0) throw Error(ErrorCode::InvalidInstance, "instance has no objects");
  if (inst.workspace.width <= 0.0 || inst.workspace.height <= 0.0) {
    throw Error(ErrorCode::InvalidInstance, "workspace must have positive extent");
  }
  for (ObjectId i = 1; i <= n; ++i) {
    if (!(inst.radius(i) > 0.0)) {
      throw Error(ErrorCode::InvalidInstance, "object radius must be positive");
    }
  }
  if (inst.start.size() != n || inst.goal.size() != n) {
    throw Error(ErrorCode::InvalidInstance, "start/goal must cover all objects");
  }
  if (!is_valid_arrangement(inst.start, inst)) {
    throw Error(ErrorCode::InvalidInstance, "start arrangement is invalid");
  }
  if (!is_valid_arrangement(inst.goal, inst)) {
    throw Error(ErrorCode::InvalidInstance, "goal arrangement is invalid");
  }
  if (!std::isfinite(inst.robot_start.x) || !std::isfinite(inst.robot_start.y)) {
    throw Error(ErrorCode::InvalidInstance, "robot start must be finite");
  }
}

State apply_action(const State& s, const Action& act, const Instance& inst) {
  const int n = inst.object_count();
  if (act.object < 1 || act.object > n) {
    throw Error(ErrorCode::PickMismatch, "action references unknown object");
  }
  if (!pose_close(act.pick, s.arrangement.of(act.object), kPickTol)) {
    throw Error(ErrorCode::PickMismatch, "pick pose disagrees with current object pose");
  }
  if (!placement_free(act.place, inst.radius(act.object), s.arrangement, inst, act.object)) {
    throw Error(ErrorCode::InvalidPlacement, "placement collides or leaves the workspace");
  }
  State next = s;
  next.arrangement.of(act.object) = act.place;
  next.robot = act.place;
  return next;
}

std::vector<ObjectId> misplaced_objects(const State& s, const Instance& inst) {
  std::vector<ObjectId> out;
  const int n = inst.object_count();
  for (ObjectId k = 1; k <= n; ++k) {
    if (!at_goal(s.arrangement.of(k), k, inst)) out.push_back(k);
  }
  return out;
}

bool arrangement_at_goal(const Arrangement& a, const Instance& inst) {
  const int n = inst.object_count();
  for (ObjectId k = 1; k <= n; ++k) {
    if (!pose_close(a.of(k), inst.goal.of(k), kGoalTol)) return false;
  }
  return true;
}

bool DependencyGraph::edge(ObjectId i, ObjectId j) const {
  const auto& row = blockers[static_cast<std::size_t>(i - 1)];
  return std::find(row.begin(), row.end(), j) != row.end();
}

int DependencyGraph::edge_count() const {
  int total = 0;
  for (const auto& row : blockers) total += static_cast<int>(row.size());
  return total;
}

std::vector<int> DependencyGraph::blocks_count() const {
  std::vector<int> in(static_cast<std::size_t>(n), 0);
  for (const auto& row : blockers) {
    for (ObjectId j : row) ++in[static_cast<std::size_t>(j - 1)];
  }
  return in;
}

DependencyGraph build_dependency_graph(const Arrangement& a, const Instance& inst) {
  const int n = inst.object_count();
  DependencyGraph g;
  g.n = n;
  g.blockers.resize(static_cast<std::size_t>(n));
  for (ObjectId i = 1; i <= n; ++i) {
    for (ObjectId j = 1; j <= n; ++j) {
      if (i == j) continue;
      if (disks_collide(inst.goal.of(i), inst.radius(i), a.of(j), inst.radius(j))) {
        g.blockers[static_cast<std::size_t>(i - 1)].push_back(j);
      }
    }
  }
  return g;
}

namespace {

void append_quantized(std::string& out, double v) {
  // 1e-9 grid; coordinates are table-scale so this never overflows.
  const auto q = static_cast<std::int64_t>(std::llround(v * 1e9));
  char buf[sizeof q];
  std::memcpy(buf, &q, sizeof q);
  out.append(buf, sizeof q);
}

}  // namespace

StateKey state_key(const State& s) {
  StateKey key;
  key.reserve((s.arrangement.poses.size() + 1) * 16);
  append_quantized(key, s.robot.x);
  append_quantized(key, s.robot.y);
  for (const Pose& p : s.arrangement.poses) {
    append_quantized(key, p.x);
    append_quantized(key, p.y);
  }
  return key;
}

ValidationResult validate_plan(const Plan& plan, const Instance& inst) {
  State cur{inst.robot_start, inst.start};
  const int n = inst.object_count();
  for (std::size_t i = 0; i < plan.actions.size(); ++i) {
    const Action& act = plan.actions[i];
    const int idx = static_cast<int>(i);
    if (act.object < 1 || act.object > n) {
      return {false, idx, "unknown object id"};
    }
    if (act.pick == act.place) {
      return {false, idx, "pick equals place"};
    }
    if (!pose_close(act.pick, cur.arrangement.of(act.object), kPickTol)) {
      return {false, idx, "pick pose disagrees with replayed state"};
    }
    if (!placement_free(act.place, inst.radius(act.object), cur.arrangement, inst, act.object)) {
      return {false, idx, "placement collides or leaves the workspace"};
    }
    cur.arrangement.of(act.object) = act.place;
    cur.robot = act.place;
  }
  if (!arrangement_at_goal(cur.arrangement, inst)) {
    return {false, -1, "final arrangement does not match the goal"};
  }
  return {};
}

}  // namespace strap
