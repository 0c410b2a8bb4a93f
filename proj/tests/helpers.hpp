#pragma once

#include <vector>

#include "strap/model.hpp"

namespace strap::test {

// Uniform-radius instance from explicit start/goal pose lists.
inline Instance make_instance(Workspace w, double radius, std::vector<Pose> start,
                              std::vector<Pose> goal,
                              Embodiment embodiment = Embodiment::Stationary,
                              Pose robot_start = {0.0, 0.0}) {
  Instance inst;
  inst.workspace = w;
  inst.embodiment = embodiment;
  inst.robot_start = robot_start;
  inst.radii.assign(start.size(), radius);
  inst.start.poses = std::move(start);
  inst.goal.poses = std::move(goal);
  return inst;
}

// Two disks that must trade places; one buffer move is unavoidable.
inline Instance make_swap(Embodiment embodiment = Embodiment::Stationary) {
  return make_instance({10.0, 5.0}, 1.0, {{4.0, 2.5}, {6.0, 2.5}}, {{6.0, 2.5}, {4.0, 2.5}},
                       embodiment, {1.0, 1.0});
}

// Three-object chain: 2 sits on 1's goal, 3 sits on 2's goal, 3's goal free.
inline Instance make_chain() {
  return make_instance({20.0, 10.0}, 1.0, {{14.0, 2.0}, {2.5, 2.0}, {6.5, 2.0}},
                       {{2.0, 2.0}, {6.0, 2.0}, {10.0, 2.0}}, Embodiment::Stationary,
                       {10.0, 5.0});
}

}  // namespace strap::test
