#pragma once

#include <span>

#include "strap/model.hpp"

namespace strap {

struct CostModel {
  Embodiment embodiment = Embodiment::Stationary;
  double mc = 1.0;  // manipulation cost per pick-and-place
};

struct CostBreakdown {
  double travel = 0.0;
  double manipulation = 0.0;

  double total() const { return travel + manipulation; }
};

// Accumulated cost of an action sequence executed from robot_start:
// MC per action plus the travel chain robot -> pick_1 -> place_1 -> pick_2 -> ...
CostBreakdown g_cost(const Pose& robot_start, std::span<const Action> actions,
                     const CostModel& cm, const Workspace& w);

// Lower bound on the remaining cost: MC per misplaced object plus each
// misplaced object's direct travel to its goal. Admissible because travel
// cost is a metric for both embodiments.
CostBreakdown h_cost(const State& s, const Instance& inst, const CostModel& cm);

}  // namespace strap
