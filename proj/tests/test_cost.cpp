#include <doctest.h>

#include <vector>

#include "helpers.hpp"
#include "strap/bench.hpp"
#include "strap/cost.hpp"
#include "strap/rng.hpp"
#include "strap/search.hpp"

using namespace strap;
using test::make_instance;

TEST_SUITE_BEGIN("cost");

TEST_CASE("g_cost of an empty sequence is zero") {
  const CostModel cm{Embodiment::Stationary, 1.0};
  const auto cb = g_cost({0, 0}, {}, cm, {10, 5});
  CHECK(cb.total() == 0.0);
}

TEST_CASE("g_cost chains travel legs, stationary") {
  const CostModel cm{Embodiment::Stationary, 1.0};
  const std::vector<Action> actions = {{1, {3, 4}, {6, 8}}};
  const auto cb = g_cost({0, 0}, actions, cm, {10, 10});
  CHECK(cb.manipulation == doctest::Approx(1.0));
  CHECK(cb.travel == doctest::Approx(10.0));  // two 3-4-5 legs
  CHECK(cb.total() == doctest::Approx(11.0));
}

TEST_CASE("g_cost chains perimeter arcs, mobile") {
  const Workspace w{10.0, 5.0};
  const CostModel cm{Embodiment::Mobile, 1.0};

  // Hand-built arc table (perimeter 30, ccw from the origin corner):
  //   robot (2,0.5)   -> bottom, arc 2
  //   pick1 (4,0.5)   -> bottom, arc 4
  //   place1 (6,0.5)  -> bottom, arc 6
  //   pick2 (7.5,0.5) -> bottom, arc 7.5
  //   place2 (9,0.5)  -> bottom, arc 9
  // travel = 2 + 2 + 1.5 + 1.5 = 7
  const std::vector<Action> bottom = {{1, {4, 0.5}, {6, 0.5}}, {2, {7.5, 0.5}, {9, 0.5}}};
  const auto cb = g_cost({2, 0.5}, bottom, cm, w);
  CHECK(cb.manipulation == doctest::Approx(2.0));
  CHECK(cb.travel == doctest::Approx(7.0));
  CHECK(cb.total() == doctest::Approx(9.0));

  // Variant whose last place projects to the left wall: (0.5,4) -> arc 26.
  // Last leg |7.5 - 26| = 18.5 wraps to 30 - 18.5 = 11.5, so travel = 17.
  const std::vector<Action> wrap = {{1, {4, 0.5}, {6, 0.5}}, {2, {7.5, 0.5}, {0.5, 4}}};
  const auto cb2 = g_cost({2, 0.5}, wrap, cm, w);
  CHECK(cb2.travel == doctest::Approx(17.0));
  CHECK(cb2.total() == doctest::Approx(19.0));
}

TEST_CASE("h_cost counts misplaced objects and direct travel") {
  const CostModel cm{Embodiment::Stationary, 1.0};

  auto inst = make_instance({10, 5}, 0.5, {{2, 2}, {5, 2}}, {{2, 2}, {5, 2}});
  const State done{inst.robot_start, inst.start};
  CHECK(h_cost(done, inst, cm).total() == 0.0);

  // object 2 is exactly 5 units from its goal: (5,2) -> (9,5)
  auto one = make_instance({12, 6}, 0.5, {{2, 2}, {5, 2}}, {{2, 2}, {9, 5}});
  const State s{one.robot_start, one.start};
  CHECK(h_cost(s, one, cm).total() == doctest::Approx(6.0));
}

TEST_CASE("h_cost is zero exactly within the goal tolerance") {
  const CostModel cm{Embodiment::Stationary, 1.0};
  auto inst = make_instance({10, 5}, 0.5, {{2, 2}}, {{2, 2}});
  State s{inst.robot_start, inst.start};

  s.arrangement.of(1) = {2.0 + 1e-7, 2.0};  // inside the 1e-6 tolerance
  CHECK(h_cost(s, inst, cm).total() == 0.0);

  s.arrangement.of(1) = {2.0 + 2e-6, 2.0};  // outside
  CHECK(h_cost(s, inst, cm).total() > 0.0);
  CHECK(h_cost(s, inst, cm).total() >= cm.mc);
}

TEST_CASE("h_cost mobile composes per-object travel_cost calls") {
  const CostModel cm{Embodiment::Mobile, 1.0};
  auto inst = make_instance({10, 5}, 0.5, {{1, 0.5}, {5, 0.5}, {9, 0.5}},
                            {{1, 4.5}, {5, 4.5}, {9, 4.5}}, Embodiment::Mobile, {0.5, 0.5});
  const State s{inst.robot_start, inst.start};
  double expect = 3.0;
  for (ObjectId k = 1; k <= 3; ++k) {
    expect += travel_cost(inst.start.of(k), inst.goal.of(k), Embodiment::Mobile, inst.workspace);
  }
  CHECK(h_cost(s, inst, cm).total() == doctest::Approx(expect));
  CHECK(h_cost(s, inst, cm).total() >= h_cost(s, inst, cm).travel);
}

TEST_CASE("node f is the plain sum of g and h") {
  SearchNode node;
  node.g = 11.0;
  node.h = 6.0;
  CHECK(node.f() == 17.0);
  CHECK(node.f() >= node.g);
  CHECK(node.f() >= node.h);
}

TEST_CASE("g_cost accounting is associative over splits") {
  const Workspace w{12.0, 6.0};
  Rng rng(11);
  for (Embodiment e : {Embodiment::Stationary, Embodiment::Mobile}) {
    const CostModel cm{e, 1.0};
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<Action> actions;
      const int m = 1 + static_cast<int>(rng.uniform_index(6));
      for (int i = 0; i < m; ++i) {
        actions.push_back({1,
                           {rng.uniform(0.5, 11.5), rng.uniform(0.5, 5.5)},
                           {rng.uniform(0.5, 11.5), rng.uniform(0.5, 5.5)}});
      }
      const Pose start{rng.uniform(0.5, 11.5), rng.uniform(0.5, 5.5)};
      const double whole = g_cost(start, actions, cm, w).total();

      const std::size_t cut = rng.uniform_index(static_cast<std::uint64_t>(m) + 1);
      std::span<const Action> all(actions);
      const double prefix = g_cost(start, all.subspan(0, cut), cm, w).total();
      const Pose mid = cut == 0 ? start : actions[cut - 1].place;
      const double suffix = g_cost(mid, all.subspan(cut), cm, w).total();
      REQUIRE(std::abs(whole - (prefix + suffix)) <= 1e-9);
    }
  }
}

TEST_CASE("h_cost is admissible against exhaustive remaining cost") {
  // Enumerate every reachable state of small buffer-free instances by BFS
  // over goal moves, then compare h against the oracle's remaining optimum.
  Rng rng(5);
  const CostModel cm{Embodiment::Stationary, 1.0};
  int states_checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    GeneratorConfig gc;
    gc.n_objects = 3;
    gc.density = 0.15;
    gc.workspace = {8.0, 5.0};
    gc.rng_seed = rng.next_u64();
    const Instance inst = generate_monotone_instance(gc);

    std::vector<State> frontier{State{inst.robot_start, inst.start}};
    while (!frontier.empty()) {
      const State s = frontier.back();
      frontier.pop_back();
      ++states_checked;
      OracleConfig oc;
      const double remaining = brute_force_remaining(s, inst, cm, oc);
      REQUIRE(h_cost(s, inst, cm).total() <= remaining + 1e-9);
      for (ObjectId k : misplaced_objects(s, inst)) {
        if (!placement_free(inst.goal.of(k), inst.radius(k), s.arrangement, inst, k)) continue;
        frontier.push_back(apply_action(s, {k, s.arrangement.of(k), inst.goal.of(k)}, inst));
      }
    }
  }
  CHECK(states_checked > 100);
}

TEST_SUITE_END();
