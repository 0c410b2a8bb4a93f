#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "strap/cost.hpp"
#include "strap/model.hpp"

namespace strap {

struct GeneratorConfig {
  int n_objects = 5;
  double density = 0.2;  // sum of object area / table area
  Workspace workspace{10.0, 10.0};
  double radius = 0.0;  // derived from density when 0
  Embodiment embodiment = Embodiment::Stationary;
  std::uint64_t rng_seed = 0;
};

// Rejection-samples a valid start arrangement and an independent valid goal
// arrangement. robot_start: table center (stationary) or the origin corner
// (mobile). Deterministic under seed; throws GenerationFailed when the
// packing does not fit within the trial budget.
Instance generate_instance(const GeneratorConfig& cfg);

// Variant where every object's goal is free of every other object's start
// and goal, so any move order solves the instance without buffers.
Instance generate_monotone_instance(const GeneratorConfig& cfg);

struct OracleConfig {
  int max_n = 6;              // monotone variant size cap
  bool allow_buffers = false;  // general variant (requires n <= 3)
  double grid_step = 0.25;    // buffer grid spacing for the general variant
  std::uint64_t node_cap = 20'000'000;
};

// Exhaustive minimum cost over move orders (monotone variant) or over move
// orders plus one grid buffer visit per object (general variant). Throws
// TooLarge beyond the caps, NoSolution when the restricted space is empty.
double brute_force_optimal(const Instance& inst, const CostModel& cm,
                           const OracleConfig& cfg = {});

// Same search started from an arbitrary valid state.
double brute_force_remaining(const State& from, const Instance& inst, const CostModel& cm,
                             const OracleConfig& cfg = {});

struct RunRecord {
  std::string instance_id;
  std::string planner;
  bool success = false;
  int actions = 0;
  double travel_cost = 0.0;
  double total_cost = 0.0;
  double wall_time_s = 0.0;
  std::uint64_t seed = 0;
};

struct SuiteConfig {
  GeneratorConfig gen;
  int instance_count = 10;
  double timeout_s = 60.0;
  std::uint64_t max_iterations = 0;  // 0 = wall-clock budget only
  std::vector<std::string> planners{"strap"};  // strap | iterative | strap-noattempt
  double mc = 1.0;
  std::uint64_t suite_seed = 0;
  int jobs = 1;
};

// Runs every (instance x planner) cell, validates each emitted plan before
// recording metrics, and never aborts on per-cell failures. Records come back
// sorted by (instance_id, planner); plans_out (optional) receives the emitted
// plan per record index (empty plan when the cell failed).
std::vector<RunRecord> run_suite(const SuiteConfig& cfg,
                                 std::vector<std::optional<Plan>>* plans_out = nullptr,
                                 std::vector<Instance>* instances_out = nullptr);

std::string records_to_csv(const std::vector<RunRecord>& records);

// Per-planner means of the four reported metrics plus success rate.
struct PlannerSummary {
  std::string planner;
  int runs = 0;
  double success_rate = 0.0;
  double mean_actions = 0.0;
  double mean_travel_cost = 0.0;
  double mean_total_cost = 0.0;
  double mean_wall_time_s = 0.0;
};

std::vector<PlannerSummary> summarize(const std::vector<RunRecord>& records);

}  // namespace strap
