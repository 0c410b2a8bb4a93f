#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "strap/io.hpp"

namespace fs = std::filesystem;
using namespace strap;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("strap_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run_cli(const std::string& args, const std::string& log = "/dev/null") {
  const std::string cmd = std::string(STRAP_CLI_PATH) + " " + args + " >" + log + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("generate -> plan -> validate -> render round trip") {
  TempDir tmp;
  const auto inst = tmp.file("inst.json");
  const auto plan = tmp.file("plan.json");
  const auto svg = tmp.file("scene.svg");

  CHECK(run_cli("generate --n 6 --density 0.2 --seed 11 --out " + inst) == 0);
  CHECK(run_cli("plan " + inst + " --seed 12 --max-iterations 60 --out " + plan) == 0);
  CHECK(run_cli("validate " + plan + " " + inst) == 0);
  CHECK(run_cli("render " + inst + " --plan " + plan + " --out " + svg) == 0);
  CHECK(fs::exists(svg));
  CHECK(fs::exists(plan + ".stats.json"));
}

TEST_CASE("validate flags a tampered pick pose with exit 3") {
  TempDir tmp;
  const auto inst = tmp.file("inst.json");
  const auto plan_path = tmp.file("plan.json");
  REQUIRE(run_cli("generate --n 4 --density 0.2 --seed 21 --out " + inst) == 0);
  REQUIRE(run_cli("plan " + inst + " --seed 22 --max-iterations 40 --out " + plan_path) == 0);

  Plan plan = load_plan(plan_path);
  plan.actions[0].pick.x += 0.37;
  save_plan(plan, inst, plan_path);

  const auto log = tmp.file("validate.log");
  CHECK(run_cli("validate " + plan_path + " " + inst, log) == 3);
  const std::string message = read_file(log);
  CHECK(message.find("action 0") != std::string::npos);
}

TEST_CASE("expired budget exits 2 with timeout stats") {
  TempDir tmp;
  const auto inst = tmp.file("inst.json");
  const auto stats = tmp.file("stats.json");
  REQUIRE(run_cli("generate --n 15 --density 0.2 --seed 71 --out " + inst) == 0);
  CHECK(run_cli("plan " + inst + " --seed 72 --timeout 0.000001 --out " + tmp.file("p.json") +
                " --stats " + stats) == 2);
  CHECK(read_file(stats).find("\"terminated\": \"timeout\"") != std::string::npos);
}

TEST_CASE("missing input exits 1, draining queue exits 2") {
  TempDir tmp;
  CHECK(run_cli("plan " + tmp.file("absent.json") + " --out " + tmp.file("p.json")) == 1);

  // Snug swap: no buffer fits, so the search drains and no plan exists.
  const auto inst = tmp.file("snug.json");
  write_file(inst, R"({
  "format": "strap/1",
  "workspace": {"width": 4.2, "height": 2.1},
  "embodiment": "stationary",
  "robot_start": [1.05, 1.05],
  "objects": [
    {"id": 1, "radius": 1.0, "start": [1.05, 1.05], "goal": [3.15, 1.05]},
    {"id": 2, "radius": 1.0, "start": [3.15, 1.05], "goal": [1.05, 1.05]}
  ]
})");
  const auto stats = tmp.file("stats.json");
  CHECK(run_cli("plan " + inst + " --seed 5 --out " + tmp.file("p.json") + " --stats " + stats)
        == 2);
  CHECK(read_file(stats).find("exhausted") != std::string::npos);
}

TEST_CASE("plans are byte-identical across reruns in cap mode") {
  TempDir tmp;
  const auto inst = tmp.file("inst.json");
  REQUIRE(run_cli("generate --n 7 --density 0.2 --seed 31 --out " + inst) == 0);

  const std::string common = "plan " + inst + " --seed 32 --max-iterations 80 --timeout 1e9";
  const auto p1 = tmp.file("p1.json");
  const auto p2 = tmp.file("p2.json");
  REQUIRE(run_cli(common + " --out " + p1) == 0);
  REQUIRE(run_cli(common + " --out " + p2) == 0);
  CHECK(read_file(p1) == read_file(p2));
}

TEST_CASE("goal attempting never loses to the ablated run") {
  TempDir tmp;
  const auto inst = tmp.file("inst.json");
  REQUIRE(run_cli("generate --n 4 --density 0.2 --seed 41 --out " + inst) == 0);

  const auto full = tmp.file("full.json");
  const auto ablated = tmp.file("ablated.json");
  REQUIRE(run_cli("plan " + inst + " --seed 42 --timeout 20 --out " + full) == 0);
  const int rc = run_cli("plan " + inst + " --seed 42 --timeout 20 --no-goal-attempt --out " +
                         ablated);
  if (rc == 0) {
    CHECK(load_plan(full).total_cost <= load_plan(ablated).total_cost + 1e-9);
  } else {
    CHECK(rc == 2);
  }
}

TEST_CASE("refine reports a non-negative delta and exit 0") {
  TempDir tmp;
  const auto inst = tmp.file("inst.json");
  const auto plan_path = tmp.file("plan.json");
  const auto refined = tmp.file("refined.json");
  REQUIRE(run_cli("generate --n 6 --density 0.25 --seed 51 --out " + inst) == 0);
  REQUIRE(run_cli("plan " + inst + " --seed 52 --max-iterations 30 --out " + plan_path) == 0);
  CHECK(run_cli("refine " + plan_path + " " + inst + " --seed 53 --out " + refined) == 0);
  CHECK(run_cli("validate " + refined + " " + inst) == 0);

  const Plan before = load_plan(plan_path);
  const Plan after = load_plan(refined);
  CHECK(after.total_cost <= before.total_cost + 1e-9);
}

TEST_CASE("bench writes csv and summary") {
  TempDir tmp;
  const auto prefix = tmp.file("bench");
  CHECK(run_cli("bench --planners strap,iterative --n-list 4 --instances 2 --timeout 10 "
                "--max-iterations 30 --seed 61 --out " +
                prefix) == 0);
  const std::string csv = read_file(prefix + ".csv");
  CHECK(csv.find("instance_id,planner,success") == 0);
  // header + 2 instances x 2 planners
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  CHECK(read_file(prefix + ".summary.json").find("strap") != std::string::npos);
}

TEST_SUITE_END();
