#include "strap/cost.hpp"

namespace strap {

CostBreakdown g_cost(const Pose& robot_start, std::span<const Action> actions,
                     const CostModel& cm, const Workspace& w) {
  CostBreakdown out;
  out.manipulation = cm.mc * static_cast<double>(actions.size());
  Pose at = robot_start;
  for (const Action& a : actions) {
    out.travel += travel_cost(at, a.pick, cm.embodiment, w);
    out.travel += travel_cost(a.pick, a.place, cm.embodiment, w);
    at = a.place;
  }
  return out;
}

CostBreakdown h_cost(const State& s, const Instance& inst, const CostModel& cm) {
  CostBreakdown out;
  const int n = inst.object_count();
  for (ObjectId k = 1; k <= n; ++k) {
    const Pose& cur = s.arrangement.of(k);
    if (at_goal(cur, k, inst)) continue;
    out.manipulation += cm.mc;
    out.travel += travel_cost(cur, inst.goal.of(k), cm.embodiment, inst.workspace);
  }
  return out;
}

}  // namespace strap
