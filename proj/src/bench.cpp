#include "strap/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "strap/local_solver.hpp"
#include "strap/rng.hpp"
#include "strap/search.hpp"

namespace strap {

namespace {

constexpr std::uint64_t kArrangementTrials = 100'000;

double derive_radius(const GeneratorConfig& cfg) {
  if (cfg.radius > 0.0) return cfg.radius;
  return std::sqrt(cfg.density * cfg.workspace.width * cfg.workspace.height /
                   (static_cast<double>(cfg.n_objects) * std::numbers::pi));
}

Arrangement sample_arrangement(const GeneratorConfig& cfg, double r, Rng& rng,
                               const std::function<bool(const Pose&, const Arrangement&, int)>&
                                   extra_ok) {
  const Workspace& w = cfg.workspace;
  if (w.width < 2.0 * r || w.height < 2.0 * r) {
    throw Error(ErrorCode::GenerationFailed, "objects do not fit in the workspace");
  }
  Arrangement arr;
  arr.poses.resize(static_cast<std::size_t>(cfg.n_objects));
  std::uint64_t trials = 0;
  for (int i = 0; i < cfg.n_objects; ++i) {
    while (true) {
      if (++trials > kArrangementTrials) {
        throw Error(ErrorCode::GenerationFailed, "packing rejection budget exhausted");
      }
      Pose p{rng.uniform(r, w.width - r), rng.uniform(r, w.height - r)};
      bool ok = true;
      for (int j = 0; j < i; ++j) {
        if (disks_collide(p, r, arr.poses[static_cast<std::size_t>(j)], r)) { ok = false; break; }
      }
      if (ok && extra_ok && !extra_ok(p, arr, i)) ok = false;
      if (ok) {
        arr.poses[static_cast<std::size_t>(i)] = p;
        break;
      }
    }
  }
  return arr;
}

Instance assemble(const GeneratorConfig& cfg, double r, Arrangement start, Arrangement goal) {
  Instance inst;
  inst.workspace = cfg.workspace;
  inst.embodiment = cfg.embodiment;
  inst.radii.assign(static_cast<std::size_t>(cfg.n_objects), r);
  inst.start = std::move(start);
  inst.goal = std::move(goal);
  inst.robot_start = cfg.embodiment == Embodiment::Mobile
                         ? Pose{0.0, 0.0}
                         : Pose{cfg.workspace.width / 2.0, cfg.workspace.height / 2.0};
  validate_instance(inst);
  return inst;
}

}  // namespace

Instance generate_instance(const GeneratorConfig& cfg) {
  if (cfg.n_objects < 1) throw Error(ErrorCode::GenerationFailed, "need at least one object");
  if (!(cfg.density > 0.0 && cfg.density < 1.0)) {
    throw Error(ErrorCode::GenerationFailed, "density must be in (0, 1)");
  }
  const double r = derive_radius(cfg);
  Rng rng(cfg.rng_seed);
  Arrangement start = sample_arrangement(cfg, r, rng, nullptr);
  Arrangement goal = sample_arrangement(cfg, r, rng, nullptr);
  return assemble(cfg, r, std::move(start), std::move(goal));
}

Instance generate_monotone_instance(const GeneratorConfig& cfg) {
  if (cfg.n_objects < 1) throw Error(ErrorCode::GenerationFailed, "need at least one object");
  if (!(cfg.density > 0.0 && cfg.density < 1.0)) {
    throw Error(ErrorCode::GenerationFailed, "density must be in (0, 1)");
  }
  const double r = derive_radius(cfg);
  Rng rng(cfg.rng_seed);
  Arrangement start = sample_arrangement(cfg, r, rng, nullptr);
  // Goals must clear every start pose as well as each other, so every order
  // of direct goal moves stays collision-free.
  auto clears_starts = [&](const Pose& p, const Arrangement&, int) {
    for (const Pose& s : start.poses) {
      if (disks_collide(p, r, s, r)) return false;
    }
    return true;
  };
  Arrangement goal = sample_arrangement(cfg, r, rng, clears_starts);
  return assemble(cfg, r, std::move(start), std::move(goal));
}

namespace {

struct OracleSearch {
  const Instance& inst;
  const CostModel& cm;
  const OracleConfig& cfg;
  std::vector<Pose> grid;
  std::uint64_t nodes = 0;
  double best = std::numeric_limits<double>::infinity();

  void build_grid(double r_max) {
    const Workspace& w = inst.workspace;
    for (double x = r_max; x <= w.width - r_max + 1e-12; x += cfg.grid_step) {
      for (double y = r_max; y <= w.height - r_max + 1e-12; y += cfg.grid_step) {
        grid.push_back({x, y});
      }
    }
  }

  // Trivial admissible bound independent of the planner's heuristic.
  double floor_bound(int misplaced) const { return cm.mc * static_cast<double>(misplaced); }

  void dfs(Arrangement& arr, const Pose& robot, double cost, std::vector<char>& buffered,
           ObjectId last_moved) {
    if (++nodes > cfg.node_cap) throw Error(ErrorCode::TooLarge, "oracle node cap exceeded");
    int misplaced = 0;
    const int n = inst.object_count();
    for (ObjectId k = 1; k <= n; ++k) {
      if (!pose_close(arr.of(k), inst.goal.of(k), kGoalTol)) ++misplaced;
    }
    if (misplaced == 0) {
      best = std::min(best, cost);
      return;
    }
    if (cost + floor_bound(misplaced) >= best) return;

    // Goal moves first: cheap complete solutions tighten the bound early.
    for (ObjectId k = 1; k <= n; ++k) {
      if (k == last_moved) continue;
      if (pose_close(arr.of(k), inst.goal.of(k), kGoalTol)) continue;
      const Pose goal = inst.goal.of(k);
      if (!placement_free(goal, inst.radius(k), arr, inst, k)) continue;
      const Pose pick = arr.of(k);
      const double step = cm.mc + travel_cost(robot, pick, cm.embodiment, inst.workspace) +
                          travel_cost(pick, goal, cm.embodiment, inst.workspace);
      if (cost + step + floor_bound(misplaced - 1) >= best) continue;
      arr.of(k) = goal;
      dfs(arr, goal, cost + step, buffered, k);
      arr.of(k) = pick;
    }

    if (!cfg.allow_buffers) return;
    for (ObjectId k = 1; k <= n; ++k) {
      if (k == last_moved) continue;
      if (pose_close(arr.of(k), inst.goal.of(k), kGoalTol)) continue;
      if (buffered[static_cast<std::size_t>(k)]) continue;
      const Pose pick = arr.of(k);
      const double leg_in = travel_cost(robot, pick, cm.embodiment, inst.workspace);

      // Cheapest placements first so the cost bound cuts the rest of the
      // sorted list in one break.
      std::vector<std::pair<double, Pose>> options;
      for (const Pose& b : grid) {
        if (!in_bounds(b, inst.radius(k), inst.workspace)) continue;
        if (!placement_free(b, inst.radius(k), arr, inst, k)) continue;
        if (pose_close(b, pick, kPickTol)) continue;
        const double step =
            cm.mc + leg_in + travel_cost(pick, b, cm.embodiment, inst.workspace);
        options.emplace_back(step, b);
      }
      std::sort(options.begin(), options.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      for (const auto& [step, b] : options) {
        if (cost + step + floor_bound(misplaced) >= best) break;
        arr.of(k) = b;
        buffered[static_cast<std::size_t>(k)] = 1;
        dfs(arr, b, cost + step, buffered, k);
        buffered[static_cast<std::size_t>(k)] = 0;
        arr.of(k) = pick;
      }
    }
  }
};

}  // namespace

double brute_force_remaining(const State& from, const Instance& inst, const CostModel& cm,
                             const OracleConfig& cfg) {
  const int n = inst.object_count();
  if (cfg.allow_buffers) {
    if (n > 3) throw Error(ErrorCode::TooLarge, "general oracle handles at most 3 objects");
  } else if (n > cfg.max_n) {
    throw Error(ErrorCode::TooLarge, "monotone oracle size cap exceeded");
  }

  OracleSearch search{inst, cm, cfg, {}, 0, std::numeric_limits<double>::infinity()};
  if (cfg.allow_buffers) {
    double r_max = 0.0;
    for (double r : inst.radii) r_max = std::max(r_max, r);
    search.build_grid(r_max);
  }
  Arrangement arr = from.arrangement;
  std::vector<char> buffered(static_cast<std::size_t>(n + 1), 0);
  search.dfs(arr, from.robot, 0.0, buffered, 0);
  if (!std::isfinite(search.best)) {
    throw Error(ErrorCode::NoSolution, "oracle found no plan in its restricted space");
  }
  return search.best;
}

double brute_force_optimal(const Instance& inst, const CostModel& cm, const OracleConfig& cfg) {
  return brute_force_remaining(State{inst.robot_start, inst.start}, inst, cm, cfg);
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::optional<Plan> run_planner(const std::string& planner, const Instance& inst,
                                const CostModel& cm, const SuiteConfig& cfg,
                                std::uint64_t seed) {
  if (planner == "iterative") {
    SolverBudget budget;
    budget.rng_seed = seed;
    return solve_iterative(inst, cm, cfg.timeout_s, cfg.max_iterations, budget).plan;
  }
  SearchConfig sc;
  sc.timeout_s = cfg.timeout_s;
  sc.max_iterations = cfg.max_iterations;
  sc.rng_seed = seed;
  sc.goal_attempting = planner != "strap-noattempt";
  return plan(inst, cm, sc).plan;
}

}  // namespace

std::vector<RunRecord> run_suite(const SuiteConfig& cfg,
                                 std::vector<std::optional<Plan>>* plans_out,
                                 std::vector<Instance>* instances_out) {
  for (const std::string& p : cfg.planners) {
    if (p != "strap" && p != "iterative" && p != "strap-noattempt") {
      throw Error(ErrorCode::IoError, "unknown planner: " + p);
    }
  }

  std::vector<Instance> instances;
  std::vector<std::string> ids;
  std::vector<std::uint64_t> gen_seeds;
  instances.reserve(static_cast<std::size_t>(cfg.instance_count));
  for (int i = 0; i < cfg.instance_count; ++i) {
    GeneratorConfig gc = cfg.gen;
    gc.rng_seed = mix_seed(cfg.suite_seed, static_cast<std::uint64_t>(i));
    instances.push_back(generate_instance(gc));
    gen_seeds.push_back(gc.rng_seed);
    std::ostringstream id;
    id << "n" << cfg.gen.n_objects << "_"
       << (cfg.gen.embodiment == Embodiment::Mobile ? "mobile" : "stationary") << "_i" << i;
    ids.push_back(id.str());
  }

  const std::size_t cells = instances.size() * cfg.planners.size();
  std::vector<RunRecord> records(cells);
  std::vector<std::optional<Plan>> plans(cells);
  CostModel cm{cfg.gen.embodiment, cfg.mc};

  std::atomic<std::size_t> next_cell{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t cell = next_cell.fetch_add(1);
      if (cell >= cells) return;
      const std::size_t inst_idx = cell / cfg.planners.size();
      const std::string& planner = cfg.planners[cell % cfg.planners.size()];
      const Instance& inst = instances[inst_idx];
      const std::uint64_t planner_seed = mix_seed(gen_seeds[inst_idx], fnv1a(planner));

      RunRecord rec;
      rec.instance_id = ids[inst_idx];
      rec.planner = planner;
      rec.seed = planner_seed;
      const auto t0 = std::chrono::steady_clock::now();
      std::optional<Plan> result;
      try {
        result = run_planner(planner, inst, cm, cfg, planner_seed);
      } catch (const Error&) {
        result.reset();
      }
      rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                            .count();
      if (result && validate_plan(*result, inst).ok) {
        rec.success = true;
        rec.actions = static_cast<int>(result->actions.size());
        const CostBreakdown cb = g_cost(inst.robot_start, result->actions, cm, inst.workspace);
        rec.travel_cost = cb.travel;
        rec.total_cost = cb.total();
        plans[cell] = std::move(result);
      }
      records[cell] = std::move(rec);
    }
  };

  const int jobs = std::max(1, cfg.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Cells are already ordered (instance-major, planner-minor); keep it canonical.
  if (plans_out) *plans_out = std::move(plans);
  if (instances_out) *instances_out = std::move(instances);
  return records;
}

std::string records_to_csv(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  out << "instance_id,planner,success,actions,travel_cost,total_cost,wall_time_s,seed\n";
  char buf[64];
  for (const RunRecord& r : records) {
    out << r.instance_id << ',' << r.planner << ',' << (r.success ? "true" : "false") << ','
        << r.actions << ',';
    std::snprintf(buf, sizeof buf, "%.9g", r.travel_cost);
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.9g", r.total_cost);
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.6f", r.wall_time_s);
    out << buf << ',' << r.seed << '\n';
  }
  return out.str();
}

std::vector<PlannerSummary> summarize(const std::vector<RunRecord>& records) {
  std::vector<PlannerSummary> out;
  for (const RunRecord& r : records) {
    PlannerSummary* s = nullptr;
    for (PlannerSummary& cand : out) {
      if (cand.planner == r.planner) { s = &cand; break; }
    }
    if (!s) {
      out.push_back({r.planner, 0, 0, 0, 0, 0, 0});
      s = &out.back();
    }
    ++s->runs;
    if (r.success) {
      s->success_rate += 1.0;
      s->mean_actions += static_cast<double>(r.actions);
      s->mean_travel_cost += r.travel_cost;
      s->mean_total_cost += r.total_cost;
    }
    s->mean_wall_time_s += r.wall_time_s;
  }
  for (PlannerSummary& s : out) {
    const double successes = s.success_rate;
    if (successes > 0) {
      s.mean_actions /= successes;
      s.mean_travel_cost /= successes;
      s.mean_total_cost /= successes;
    }
    if (s.runs > 0) {
      s.mean_wall_time_s /= static_cast<double>(s.runs);
      s.success_rate = successes / static_cast<double>(s.runs);
    }
  }
  return out;
}

}  // namespace strap
