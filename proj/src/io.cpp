#include "strap/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace strap {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kFormat = "strap/1";

Json pose_to_json(const Pose& p) { return Json::array({p.x, p.y}); }

Pose pose_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::IoError, "pose must be [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::string embodiment_name(Embodiment e) {
  return e == Embodiment::Mobile ? "mobile" : "stationary";
}

Embodiment embodiment_from_name(const std::string& name) {
  if (name == "mobile") return Embodiment::Mobile;
  if (name == "stationary") return Embodiment::Stationary;
  throw Error(ErrorCode::IoError, "unknown embodiment: " + name);
}

std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::GoalAttempted: return "goal_attempted";
    case Provenance::Refined: return "refined";
    default: return "raw";
  }
}

Provenance provenance_from_name(const std::string& name) {
  if (name == "goal_attempted") return Provenance::GoalAttempted;
  if (name == "refined") return Provenance::Refined;
  if (name == "raw") return Provenance::Raw;
  throw Error(ErrorCode::IoError, "unknown provenance: " + name);
}

Json parse(const std::string& text, const char* what) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::IoError, std::string(what) + ": malformed JSON");
  if (!j.is_object() || j.value("format", "") != kFormat) {
    throw Error(ErrorCode::IoError, std::string(what) + ": missing or unsupported format tag");
  }
  return j;
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
  Json j;
  j["format"] = kFormat;
  j["workspace"] = {{"width", inst.workspace.width}, {"height", inst.workspace.height}};
  j["embodiment"] = embodiment_name(inst.embodiment);
  j["robot_start"] = pose_to_json(inst.robot_start);
  Json objects = Json::array();
  for (ObjectId id = 1; id <= inst.object_count(); ++id) {
    objects.push_back({{"id", id},
                       {"radius", inst.radius(id)},
                       {"start", pose_to_json(inst.start.of(id))},
                       {"goal", pose_to_json(inst.goal.of(id))}});
  }
  j["objects"] = std::move(objects);
  return j.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  const Json j = parse(text, "instance");
  Instance inst;
  try {
    inst.workspace.width = j.at("workspace").at("width").get<double>();
    inst.workspace.height = j.at("workspace").at("height").get<double>();
    inst.embodiment = embodiment_from_name(j.at("embodiment").get<std::string>());
    inst.robot_start = pose_from_json(j.at("robot_start"));
    const Json& objects = j.at("objects");
    const int n = static_cast<int>(objects.size());
    inst.radii.resize(static_cast<std::size_t>(n));
    inst.start.poses.resize(static_cast<std::size_t>(n));
    inst.goal.poses.resize(static_cast<std::size_t>(n));
    std::vector<char> seen(static_cast<std::size_t>(n + 1), 0);
    for (const Json& obj : objects) {
      const int id = obj.at("id").get<int>();
      if (id < 1 || id > n || seen[static_cast<std::size_t>(id)]) {
        throw Error(ErrorCode::IoError, "object ids must be 1..n and unique");
      }
      seen[static_cast<std::size_t>(id)] = 1;
      inst.radii[static_cast<std::size_t>(id - 1)] = obj.at("radius").get<double>();
      inst.start.of(id) = pose_from_json(obj.at("start"));
      inst.goal.of(id) = pose_from_json(obj.at("goal"));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::IoError, std::string("instance: ") + e.what());
  }
  validate_instance(inst);
  return inst;
}

std::string plan_to_json(const Plan& plan, const std::string& instance_ref) {
  Json j;
  j["format"] = kFormat;
  j["instance_ref"] = instance_ref;
  j["provenance"] = provenance_name(plan.provenance);
  j["total_cost"] = plan.total_cost;
  Json actions = Json::array();
  for (const Action& a : plan.actions) {
    actions.push_back(
        {{"object", a.object}, {"pick", pose_to_json(a.pick)}, {"place", pose_to_json(a.place)}});
  }
  j["actions"] = std::move(actions);
  return j.dump(2) + "\n";
}

Plan plan_from_json(const std::string& text, std::string* instance_ref) {
  const Json j = parse(text, "plan");
  Plan plan;
  try {
    if (instance_ref) *instance_ref = j.value("instance_ref", "");
    plan.provenance = provenance_from_name(j.at("provenance").get<std::string>());
    plan.total_cost = j.at("total_cost").get<double>();
    for (const Json& a : j.at("actions")) {
      plan.actions.push_back({a.at("object").get<int>(), pose_from_json(a.at("pick")),
                              pose_from_json(a.at("place"))});
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::IoError, std::string("plan: ") + e.what());
  }
  return plan;
}

std::string stats_to_json(const SearchStats& stats, std::uint64_t seed) {
  Json j;
  j["format"] = kFormat;
  j["iterations"] = stats.iterations;
  j["expansions"] = stats.expansions;
  j["goal_attempts"] = stats.goal_attempts;
  j["attempts_succeeded"] = stats.attempts_succeeded;
  j["nodes_created"] = stats.nodes_created;
  j["queue_peak"] = stats.queue_peak;
  Json trace = Json::array();
  for (const auto& [elapsed, cost] : stats.best_cost_trace) {
    trace.push_back(Json::array({elapsed, cost}));
  }
  j["best_cost_trace"] = std::move(trace);
  j["terminated"] = stats.terminated;
  j["seed"] = seed;
  return j.dump(2) + "\n";
}

std::string summary_to_json(
    const std::vector<std::pair<int, std::vector<PlannerSummary>>>& per_n_summaries,
    Embodiment embodiment, double density, double timeout_s) {
  Json j;
  j["format"] = "strap-bench/1";
  j["embodiment"] = embodiment_name(embodiment);
  j["density"] = density;
  j["timeout_s"] = timeout_s;
  Json planners = Json::object();
  for (const auto& [n, summaries] : per_n_summaries) {
    for (const PlannerSummary& s : summaries) {
      Json& slot = planners[s.planner][std::to_string(n)];
      slot = {{"runs", s.runs},
              {"success_rate", s.success_rate},
              {"mean_actions", s.mean_actions},
              {"mean_travel_cost", s.mean_travel_cost},
              {"mean_total_cost", s.mean_total_cost},
              {"mean_wall_time_s", s.mean_wall_time_s}};
    }
  }
  j["planners"] = std::move(planners);
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorCode::IoError, "short write to " + path);
}

Instance load_instance(const std::string& path) { return instance_from_json(read_file(path)); }

void save_instance(const Instance& inst, const std::string& path) {
  write_file(path, instance_to_json(inst));
}

Plan load_plan(const std::string& path, std::string* instance_ref) {
  return plan_from_json(read_file(path), instance_ref);
}

void save_plan(const Plan& plan, const std::string& instance_ref, const std::string& path) {
  write_file(path, plan_to_json(plan, instance_ref));
}

}  // namespace strap
