#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "strap/cost.hpp"
#include "strap/model.hpp"
#include "strap/rng.hpp"

namespace strap {

// Interval during which an object sits in a buffer, with the four gripper
// anchor positions its relocation cost is measured against. For a degenerate
// interval (the object leaves the buffer immediately) only the outer anchors
// remain.
struct BufferInterval {
  ObjectId object = 0;
  int to_buf_index = 0;
  int out_index = 0;
  std::vector<Pose> anchors;
};

struct ConstraintSet {
  std::vector<std::pair<Pose, double>> obstacles;  // (pose, radius)

  bool admits(const Pose& p, double r) const {
    for (const auto& [q, rq] : obstacles) {
      if (disks_collide(p, r, q, rq)) return false;
    }
    return true;
  }
};

BufferInterval make_interval(const std::vector<Action>& actions, int to_buf_index, int out_index);

// Obstacles a relocated buffer for `object` must clear: the arrangement when
// it entered the buffer (minus itself) plus every place pose of the interval.
ConstraintSet make_constraints(const std::vector<Action>& actions,
                               const std::vector<Arrangement>& history, ObjectId object,
                               int to_buf_index, int out_index, const Instance& inst);

// One scan over the action sequence relocating each buffer to the candidate
// minimizing the anchor travel sum, gated on global cost non-increase.
// Candidates per interval: a deterministic grid sweep, `sample_count` seeded
// draws keyed by the interval's geometry, and a pattern-search polish of the
// winner. Keying the draws by geometry makes the refinement loop's fixed
// point real: re-refining a refined plan reproduces its own final pass and
// adopts nothing. Returns the (possibly rewritten) plan and whether any
// relocation was adopted.
std::pair<Plan, bool> single_pass(const Plan& plan, const Instance& inst, const CostModel& cm,
                                  int sample_count, std::uint64_t rng_seed);

// Repeats single_pass until a pass yields no cost reduction (capped), then
// stamps the result Refined. Plans without buffer moves come back unchanged.
Plan refine_plan(const Plan& plan, const Instance& inst, const CostModel& cm,
                 int sample_count = 50, std::uint64_t rng_seed = 0);

}  // namespace strap
