#include <doctest.h>

#include "helpers.hpp"
#include "strap/model.hpp"
#include "strap/rng.hpp"

using namespace strap;
using test::make_chain;
using test::make_instance;

TEST_SUITE_BEGIN("model");

TEST_CASE("arrangement validity") {
  auto inst = make_instance({10, 5}, 1.0, {{2, 2}, {5, 2}}, {{2, 2}, {5, 2}});
  CHECK(is_valid_arrangement(inst.start, inst));

  Arrangement close = inst.start;
  close.of(2) = {3.5, 2.0};  // centers 1.5 apart < 2
  CHECK_FALSE(is_valid_arrangement(close, inst));

  Arrangement outside = inst.start;
  outside.of(1) = {0.5, 2.0};
  CHECK_FALSE(is_valid_arrangement(outside, inst));
}

TEST_CASE("apply_action moves the object and the robot") {
  auto inst = make_instance({10, 5}, 1.0, {{2, 2}, {5, 2}}, {{7, 2}, {5, 2}});
  const State s{inst.robot_start, inst.start};

  SUBCASE("valid move") {
    const State next = apply_action(s, {1, {2, 2}, {7, 2}}, inst);
    CHECK(next.arrangement.of(1) == Pose{7, 2});
    CHECK(next.arrangement.of(2) == Pose{5, 2});
    CHECK(next.robot == Pose{7, 2});
  }
  SUBCASE("placement onto another footprint") {
    CHECK_THROWS_AS(apply_action(s, {1, {2, 2}, {5.5, 2}}, inst), Error);
  }
  SUBCASE("pick mismatch") {
    CHECK_THROWS_AS(apply_action(s, {1, {3, 3}, {7, 2}}, inst), Error);
  }
}

TEST_CASE("apply then reverse restores the arrangement") {
  auto inst = make_instance({10, 5}, 1.0, {{2, 2}, {5, 2}}, {{8, 3}, {5, 2}});
  const State s{inst.robot_start, inst.start};
  const State moved = apply_action(s, {1, {2, 2}, {8, 3}}, inst);
  const State back = apply_action(moved, {1, {8, 3}, {2, 2}}, inst);
  CHECK(back.arrangement.of(1) == s.arrangement.of(1));
  CHECK(back.arrangement.of(2) == s.arrangement.of(2));
  CHECK(back.robot == Pose{2, 2});  // robot pose differs from the original state
}

TEST_CASE("misplaced_objects respects the goal tolerance") {
  auto inst = make_instance({10, 5}, 0.5, {{2, 2}, {5, 2}, {8, 2}}, {{2, 2}, {5, 2}, {8, 2}});
  State s{inst.robot_start, inst.start};
  CHECK(misplaced_objects(s, inst).empty());

  s.arrangement.of(2) = {5, 3.5};
  CHECK(misplaced_objects(s, inst) == std::vector<ObjectId>{2});

  auto shuffled = make_instance({20, 10}, 0.5, {{2, 2}, {5, 2}, {8, 2}, {11, 2}, {14, 2}},
                                {{2, 8}, {5, 8}, {8, 8}, {11, 8}, {14, 8}});
  const State s2{shuffled.robot_start, shuffled.start};
  CHECK(misplaced_objects(s2, shuffled).size() == 5);
}

TEST_CASE("dependency graph edges point at blockers") {
  SUBCASE("all goals free") {
    auto inst = make_instance({20, 10}, 1.0, {{2, 2}, {5, 2}}, {{2, 8}, {5, 8}});
    const auto g = build_dependency_graph(inst.start, inst);
    CHECK(g.edge_count() == 0);
  }
  SUBCASE("swap is a 2-cycle") {
    auto inst = test::make_swap();
    const auto g = build_dependency_graph(inst.start, inst);
    CHECK(g.edge(1, 2));
    CHECK(g.edge(2, 1));
    CHECK(g.edge_count() == 2);
  }
  SUBCASE("three-object chain") {
    auto inst = make_chain();
    const auto g = build_dependency_graph(inst.start, inst);
    // Independent pairwise overlap check of every (goal_i, pose_j) pair.
    for (ObjectId i = 1; i <= 3; ++i) {
      for (ObjectId j = 1; j <= 3; ++j) {
        if (i == j) continue;
        const bool expect =
            disks_collide(inst.goal.of(i), inst.radius(i), inst.start.of(j), inst.radius(j));
        CHECK(g.edge(i, j) == expect);
      }
    }
    CHECK(g.edge(1, 2));
    CHECK(g.edge(2, 3));
    CHECK(g.edge_count() == 2);
  }
  SUBCASE("goal arrangement is edgeless") {
    auto inst = make_chain();
    const auto g = build_dependency_graph(inst.goal, inst);
    CHECK(g.edge_count() == 0);
  }
}

TEST_CASE("state_key distinguishes robot pose and object poses") {
  auto inst = make_instance({10, 5}, 1.0, {{2, 2}, {5, 2}}, {{7, 2}, {5, 2}});
  const State a{{1, 1}, inst.start};
  const State b{{1, 1}, inst.start};
  CHECK(state_key(a) == state_key(b));

  State moved = a;
  moved.arrangement.of(1) = {2.1, 2.0};
  CHECK(state_key(a) != state_key(moved));

  // Same arrangement, different robot pose: distinct states.
  const State c{{2, 1}, inst.start};
  CHECK(state_key(a) != state_key(c));
}

TEST_CASE("validate_plan replays and checks the goal") {
  auto inst = make_instance({10, 5}, 1.0, {{2, 2}, {5, 2}}, {{8, 3}, {5, 2}});

  Plan plan;
  plan.actions = {{1, {2, 2}, {8, 3}}};
  CHECK(validate_plan(plan, inst).ok);

  Plan tampered = plan;
  tampered.actions[0].pick = {2.5, 2.0};
  const auto bad = validate_plan(tampered, inst);
  CHECK_FALSE(bad.ok);
  CHECK(bad.failed_action == 0);

  Plan incomplete;
  CHECK_FALSE(validate_plan(incomplete, inst).ok);
}

TEST_SUITE_END();
