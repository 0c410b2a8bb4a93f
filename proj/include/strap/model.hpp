#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "strap/geom.hpp"

namespace strap {

// Objects are identified 1..n, contiguous within an instance.
using ObjectId = int;

// Poses are considered "at goal" within this tolerance; buffer samples are
// continuous so any strictly positive value works, fixed for reproducibility.
inline constexpr double kGoalTol = 1e-6;

// Tolerance for matching a plan's pick pose against the replayed state.
inline constexpr double kPickTol = 1e-9;

enum class ErrorCode {
  InvalidInstance,
  InvalidPlacement,
  PickMismatch,
  NoSolution,
  GenerationFailed,
  TooLarge,
  InvalidPlan,
  IoError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Full assignment of poses to all objects, indexed by id.
struct Arrangement {
  std::vector<Pose> poses;

  Pose& of(ObjectId id) { return poses[static_cast<std::size_t>(id - 1)]; }
  const Pose& of(ObjectId id) const { return poses[static_cast<std::size_t>(id - 1)]; }
  int size() const { return static_cast<int>(poses.size()); }
};

// Search atom: the robot pose is part of the state. For a mobile robot the
// stored pose is the table-frame point of the last manipulation; the base
// location is its perimeter projection, derived lazily.
struct State {
  Pose robot;
  Arrangement arrangement;
};

struct Action {
  ObjectId object = 0;
  Pose pick;
  Pose place;
};

enum class Provenance { Raw, GoalAttempted, Refined };

struct Plan {
  std::vector<Action> actions;
  double total_cost = 0.0;
  Provenance provenance = Provenance::Raw;
};

struct Instance {
  Workspace workspace;
  Embodiment embodiment = Embodiment::Stationary;
  Pose robot_start;
  std::vector<double> radii;  // indexed by id - 1
  Arrangement start;
  Arrangement goal;

  int object_count() const { return static_cast<int>(radii.size()); }
  double radius(ObjectId id) const { return radii[static_cast<std::size_t>(id - 1)]; }
};

bool is_valid_arrangement(const Arrangement& a, const Instance& inst);

// True if a disk of radius r at p fits in the workspace without colliding
// with any object of `a` other than `ignore` (0 = ignore nothing).
bool placement_free(const Pose& p, double r, const Arrangement& a, const Instance& inst,
                    ObjectId ignore);

// Throws InvalidInstance if start/goal are invalid or metadata is inconsistent.
void validate_instance(const Instance& inst);

// Throws PickMismatch / InvalidPlacement.
State apply_action(const State& s, const Action& act, const Instance& inst);

std::vector<ObjectId> misplaced_objects(const State& s, const Instance& inst);

inline bool at_goal(const Pose& p, ObjectId id, const Instance& inst) {
  return pose_close(p, inst.goal.of(id), kGoalTol);
}

bool arrangement_at_goal(const Arrangement& a, const Instance& inst);

// Edge i -> j iff object j's current pose overlaps object i's goal footprint:
// moving i to its goal requires first moving j.
struct DependencyGraph {
  int n = 0;
  std::vector<std::vector<ObjectId>> blockers;  // blockers[i-1] = targets of i's out-edges

  bool edge(ObjectId i, ObjectId j) const;
  int edge_count() const;
  // blocked_by_count[k-1] = number of in-edges of k = goals k currently blocks.
  std::vector<int> blocks_count() const;
};

DependencyGraph build_dependency_graph(const Arrangement& a, const Instance& inst);

// Canonical byte key over all pose coordinates (robot + objects), quantized
// to a 1e-9 grid. Duplicate states in the search agree on keys.
using StateKey = std::string;
StateKey state_key(const State& s);

struct ValidationResult {
  bool ok = true;
  int failed_action = -1;  // index of offending action, -1 if none / whole-plan issue
  std::string message;
};

// Replays the plan from the instance start: every placement must be valid,
// pick poses must match, and the final arrangement must equal the goal.
ValidationResult validate_plan(const Plan& plan, const Instance& inst);

}  // namespace strap
