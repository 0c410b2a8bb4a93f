#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "strap/bench.hpp"
#include "strap/io.hpp"
#include "strap/local_solver.hpp"
#include "strap/refine.hpp"
#include "strap/render.hpp"
#include "strap/search.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNoSolution = 2;
constexpr int kExitInvalidPlan = 3;

std::uint64_t resolve_seed(std::optional<std::uint64_t> seed) {
  if (seed) return *seed;
  std::random_device rd;
  const std::uint64_t generated = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  std::cerr << "generated seed: " << generated << "\n";
  return generated;
}

strap::Embodiment parse_embodiment(const std::string& name) {
  if (name == "mobile") return strap::Embodiment::Mobile;
  if (name == "stationary") return strap::Embodiment::Stationary;
  throw strap::Error(strap::ErrorCode::IoError, "embodiment must be stationary or mobile");
}

int cmd_generate(int n, double density, double width, double height, double radius,
                 const std::string& embodiment, std::optional<std::uint64_t> seed,
                 const std::string& out) {
  strap::GeneratorConfig cfg;
  cfg.n_objects = n;
  cfg.density = density;
  cfg.workspace = {width, height};
  cfg.radius = radius;
  cfg.embodiment = parse_embodiment(embodiment);
  cfg.rng_seed = resolve_seed(seed);
  const strap::Instance inst = strap::generate_instance(cfg);
  strap::save_instance(inst, out);
  std::cout << "wrote " << out << " (n=" << n << ", seed=" << cfg.rng_seed << ")\n";
  return kExitOk;
}

int cmd_plan(const std::string& instance_path, const std::string& embodiment_override,
             double mc, double timeout_s, std::uint64_t max_iterations,
             std::optional<std::uint64_t> seed, bool no_goal_attempt, bool refine,
             int samples_per_object, const std::string& out, std::string stats_path) {
  strap::Instance inst = strap::load_instance(instance_path);
  if (!embodiment_override.empty()) inst.embodiment = parse_embodiment(embodiment_override);

  strap::SearchConfig cfg;
  cfg.timeout_s = timeout_s;
  cfg.max_iterations = max_iterations;
  cfg.rng_seed = resolve_seed(seed);
  cfg.goal_attempting = !no_goal_attempt;
  cfg.samples_per_object = samples_per_object;

  const strap::CostModel cm{inst.embodiment, mc};
  strap::PlanResult result = strap::plan(inst, cm, cfg);

  if (stats_path.empty()) stats_path = out + ".stats.json";
  strap::write_file(stats_path, strap::stats_to_json(result.stats, cfg.rng_seed));

  if (!result.plan) {
    std::cerr << "no solution found (" << result.stats.terminated << ")\n";
    return kExitNoSolution;
  }

  strap::Plan plan = *result.plan;
  if (refine) plan = strap::refine_plan(plan, inst, cm, 50, strap::mix_seed(cfg.rng_seed, 1));
  strap::save_plan(plan, instance_path, out);
  std::cout << "plan: " << plan.actions.size() << " actions, cost " << plan.total_cost
            << ", terminated " << result.stats.terminated << "\n";
  return kExitOk;
}

int cmd_refine(const std::string& plan_path, const std::string& instance_path, int samples,
               std::optional<std::uint64_t> seed, const std::string& out) {
  const strap::Instance inst = strap::load_instance(instance_path);
  const strap::Plan plan = strap::load_plan(plan_path);
  const auto check = strap::validate_plan(plan, inst);
  if (!check.ok) {
    std::cerr << "input plan does not validate: " << check.message << "\n";
    return kExitInput;
  }
  const strap::CostModel cm{inst.embodiment, 1.0};
  const double before = strap::g_cost(inst.robot_start, plan.actions, cm, inst.workspace).total();
  const strap::Plan refined = strap::refine_plan(plan, inst, cm, samples, resolve_seed(seed));
  strap::save_plan(refined, instance_path, out);
  std::cout << "cost " << before << " -> " << refined.total_cost << " (delta "
            << before - refined.total_cost << ")\n";
  return kExitOk;
}

int cmd_validate(const std::string& plan_path, const std::string& instance_path) {
  const strap::Instance inst = strap::load_instance(instance_path);
  const strap::Plan plan = strap::load_plan(plan_path);
  const auto check = strap::validate_plan(plan, inst);
  if (!check.ok) {
    std::cerr << "invalid plan";
    if (check.failed_action >= 0) std::cerr << " at action " << check.failed_action;
    std::cerr << ": " << check.message << "\n";
    return kExitInvalidPlan;
  }
  std::cout << "plan valid (" << plan.actions.size() << " actions)\n";
  return kExitOk;
}

int cmd_render(const std::string& instance_path, const std::string& plan_path,
               const std::string& out, double scale, const std::vector<std::string>& show) {
  const strap::Instance inst = strap::load_instance(instance_path);
  std::optional<strap::Plan> plan;
  if (!plan_path.empty()) {
    plan = strap::load_plan(plan_path);
    const auto check = strap::validate_plan(*plan, inst);
    if (!check.ok) {
      std::cerr << "plan does not match instance: " << check.message << "\n";
      return kExitInput;
    }
  }
  strap::RenderSpec spec;
  spec.scale = scale;
  if (!show.empty()) {
    spec.show_start = spec.show_goals = spec.show_path = spec.show_buffers = false;
    for (const std::string& item : show) {
      if (item == "start") spec.show_start = true;
      else if (item == "goals") spec.show_goals = true;
      else if (item == "path") spec.show_path = true;
      else if (item == "buffers") spec.show_buffers = true;
      else throw strap::Error(strap::ErrorCode::IoError, "unknown layer: " + item);
    }
  }
  strap::write_file(out, strap::render_svg(inst, plan, spec));
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

int cmd_bench(const std::vector<std::string>& planners, const std::vector<int>& n_list,
              double density, double timeout_s, std::uint64_t max_iterations, int instances,
              int jobs, double mc, const std::string& embodiment,
              std::optional<std::uint64_t> seed, const std::string& out_prefix) {
  const std::uint64_t suite_seed = resolve_seed(seed);
  std::vector<std::pair<int, std::vector<strap::PlannerSummary>>> per_n;
  std::string csv;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    strap::SuiteConfig cfg;
    cfg.gen.n_objects = n_list[i];
    cfg.gen.density = density;
    cfg.gen.embodiment = parse_embodiment(embodiment);
    cfg.instance_count = instances;
    cfg.timeout_s = timeout_s;
    cfg.max_iterations = max_iterations;
    cfg.planners = planners;
    cfg.mc = mc;
    cfg.suite_seed = strap::mix_seed(suite_seed, static_cast<std::uint64_t>(n_list[i]));
    cfg.jobs = jobs;
    const auto records = strap::run_suite(cfg);
    std::string block = strap::records_to_csv(records);
    if (i == 0) {
      csv = block;
    } else {
      csv += block.substr(block.find('\n') + 1);  // drop repeated header
    }
    per_n.emplace_back(n_list[i], strap::summarize(records));
    std::cout << "n=" << n_list[i] << ": done (" << records.size() << " cells)\n";
  }
  strap::write_file(out_prefix + ".csv", csv);
  strap::write_file(out_prefix + ".summary.json",
                    strap::summary_to_json(per_n, parse_embodiment(embodiment), density,
                                           timeout_s));
  std::cout << "wrote " << out_prefix << ".csv and " << out_prefix << ".summary.json\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"STRAP tabletop rearrangement planner"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a random disk instance");
  int gen_n = 5;
  double gen_density = 0.2, gen_width = 10.0, gen_height = 10.0, gen_radius = 0.0;
  std::string gen_embodiment = "stationary", gen_out = "instance.json";
  std::optional<std::uint64_t> gen_seed;
  gen->add_option("--n", gen_n, "Object count")->check(CLI::PositiveNumber);
  gen->add_option("--density", gen_density, "Disk area / table area");
  gen->add_option("--width", gen_width, "Workspace width");
  gen->add_option("--height", gen_height, "Workspace height");
  gen->add_option("--radius", gen_radius, "Fixed disk radius (default: derived from density)");
  gen->add_option("--embodiment", gen_embodiment, "stationary | mobile");
  gen->add_option("--seed", gen_seed, "RNG seed (generated and printed when absent)");
  gen->add_option("--out", gen_out, "Output instance path");

  // plan
  auto* plan_cmd = app.add_subcommand("plan", "Plan a rearrangement with STRAP");
  std::string plan_instance, plan_embodiment, plan_out = "plan.json", plan_stats;
  double plan_mc = 1.0, plan_timeout = 300.0;
  std::uint64_t plan_cap = 0;
  std::optional<std::uint64_t> plan_seed;
  bool plan_no_attempt = false, plan_refine = false;
  int plan_samples = 0;
  plan_cmd->add_option("instance", plan_instance, "Instance JSON path")->required();
  plan_cmd->add_option("--embodiment", plan_embodiment, "Override instance embodiment");
  plan_cmd->add_option("--mc", plan_mc, "Manipulation cost per action");
  plan_cmd->add_option("--timeout", plan_timeout, "Wall-clock budget in seconds");
  plan_cmd->add_option("--max-iterations", plan_cap,
                       "Iteration cap (deterministic budget; 0 = none)");
  plan_cmd->add_option("--seed", plan_seed, "RNG seed");
  plan_cmd->add_flag("--no-goal-attempt", plan_no_attempt, "Disable per-iteration goal attempts");
  plan_cmd->add_flag("--refine", plan_refine, "Refine the best plan before writing it");
  plan_cmd->add_option("--samples-per-object", plan_samples,
                       "Buffer samples per blocked object (0 = object count)");
  plan_cmd->add_option("--out", plan_out, "Output plan path");
  plan_cmd->add_option("--stats", plan_stats, "Stats JSON path (default: <out>.stats.json)");

  // refine
  auto* refine_cmd = app.add_subcommand("refine", "Relocate plan buffers to cut travel");
  std::string refine_plan_path, refine_instance, refine_out = "refined.json";
  int refine_samples = 50;
  std::optional<std::uint64_t> refine_seed;
  refine_cmd->add_option("plan", refine_plan_path, "Plan JSON path")->required();
  refine_cmd->add_option("instance", refine_instance, "Instance JSON path")->required();
  refine_cmd->add_option("--samples", refine_samples, "Buffer candidates per interval");
  refine_cmd->add_option("--seed", refine_seed, "RNG seed");
  refine_cmd->add_option("--out", refine_out, "Output plan path");

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "Replay a plan against its instance");
  std::string validate_plan_path, validate_instance;
  validate_cmd->add_option("plan", validate_plan_path, "Plan JSON path")->required();
  validate_cmd->add_option("instance", validate_instance, "Instance JSON path")->required();

  // render
  auto* render_cmd = app.add_subcommand("render", "Render an instance (and plan) to SVG");
  std::string render_instance, render_plan, render_out = "scene.svg";
  double render_scale = 60.0;
  std::vector<std::string> render_show;
  render_cmd->add_option("instance", render_instance, "Instance JSON path")->required();
  render_cmd->add_option("--plan", render_plan, "Plan JSON path");
  render_cmd->add_option("--out", render_out, "Output SVG path");
  render_cmd->add_option("--scale", render_scale, "Pixels per workspace unit")
      ->check(CLI::PositiveNumber);
  render_cmd->add_option("--show", render_show,
                         "Layers to draw: start goals path buffers (default all)");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Run a seeded planner comparison suite");
  std::vector<std::string> bench_planners{"strap", "iterative"};
  std::vector<int> bench_n{5};
  double bench_density = 0.2, bench_timeout = 60.0, bench_mc = 1.0;
  std::uint64_t bench_cap = 0;
  int bench_instances = 10, bench_jobs = 1;
  std::string bench_embodiment = "stationary", bench_out = "bench";
  std::optional<std::uint64_t> bench_seed;
  bench_cmd->add_option("--planners", bench_planners,
                        "Planners: strap iterative strap-noattempt")
      ->delimiter(',');
  bench_cmd->add_option("--n-list", bench_n, "Object counts")->delimiter(',');
  bench_cmd->add_option("--density", bench_density, "Disk density");
  bench_cmd->add_option("--timeout", bench_timeout, "Per-run budget in seconds");
  bench_cmd->add_option("--max-iterations", bench_cap, "Iteration/attempt cap (0 = none)");
  bench_cmd->add_option("--instances", bench_instances, "Instances per object count");
  bench_cmd->add_option("--jobs", bench_jobs, "Worker threads")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--mc", bench_mc, "Manipulation cost");
  bench_cmd->add_option("--embodiment", bench_embodiment, "stationary | mobile");
  bench_cmd->add_option("--seed", bench_seed, "Suite seed");
  bench_cmd->add_option("--out", bench_out, "Output prefix for .csv / .summary.json");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      return cmd_generate(gen_n, gen_density, gen_width, gen_height, gen_radius, gen_embodiment,
                          gen_seed, gen_out);
    }
    if (plan_cmd->parsed()) {
      return cmd_plan(plan_instance, plan_embodiment, plan_mc, plan_timeout, plan_cap, plan_seed,
                      plan_no_attempt, plan_refine, plan_samples, plan_out, plan_stats);
    }
    if (refine_cmd->parsed()) {
      return cmd_refine(refine_plan_path, refine_instance, refine_samples, refine_seed,
                        refine_out);
    }
    if (validate_cmd->parsed()) return cmd_validate(validate_plan_path, validate_instance);
    if (render_cmd->parsed()) {
      return cmd_render(render_instance, render_plan, render_out, render_scale, render_show);
    }
    if (bench_cmd->parsed()) {
      return cmd_bench(bench_planners, bench_n, bench_density, bench_timeout, bench_cap,
                       bench_instances, bench_jobs, bench_mc, bench_embodiment, bench_seed,
                       bench_out);
    }
  } catch (const strap::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case strap::ErrorCode::NoSolution: return kExitNoSolution;
      case strap::ErrorCode::InvalidPlan: return kExitInvalidPlan;
      default: return kExitInput;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
