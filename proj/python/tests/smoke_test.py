"""Smoke tests for the strap extension module.

Runs standalone (python smoke_test.py) or under pytest.
"""

import strap


def test_generate_and_plan():
    inst = strap.generate_instance(n=6, density=0.2, seed=7)
    assert inst.object_count() == 6
    plan, stats = strap.plan(inst, timeout_s=30.0, max_iterations=60, seed=8)
    assert plan is not None
    assert stats["terminated"] in ("goal", "timeout", "exhausted", "budget")
    ok, failed_at, message = strap.validate_plan(plan, inst)
    assert ok, (failed_at, message)
    travel, manipulation, total = strap.plan_cost(inst, plan)
    assert abs(total - plan.total_cost) < 1e-6
    assert manipulation == len(plan)


def test_travel_cost_embodiments():
    w = strap.Workspace(10.0, 5.0)
    a, b = strap.Pose(0, 0), strap.Pose(3, 4)
    assert abs(strap.travel_cost(a, b, strap.Embodiment.STATIONARY, w) - 5.0) < 1e-12
    m1, m2 = strap.Pose(1, 0.5), strap.Pose(9, 0.5)
    assert abs(strap.travel_cost(m1, m2, strap.Embodiment.MOBILE, w) - 8.0) < 1e-12


def test_refine_never_raises_cost():
    inst = strap.generate_instance(n=7, density=0.25, seed=17)
    plan, _ = strap.plan(inst, max_iterations=50, seed=18)
    assert plan is not None
    refined = strap.refine_plan(plan, inst, seed=19)
    assert refined.total_cost <= plan.total_cost + 1e-9
    assert refined.provenance == strap.Provenance.REFINED
    ok, _, _ = strap.validate_plan(refined, inst)
    assert ok


def test_iterative_baseline_and_oracle():
    inst = strap.generate_instance(n=4, density=0.15, seed=23)
    plan = strap.solve_iterative(inst, timeout_s=10.0, max_attempts=30, seed=24)
    assert plan is not None
    ok, _, _ = strap.validate_plan(plan, inst)
    assert ok


def test_json_and_svg_round_trip():
    inst = strap.generate_instance(n=5, seed=29)
    text = inst.to_json()
    again = strap.Instance.from_json(text)
    assert again.to_json() == text
    svg = strap.render_svg(inst)
    assert svg.startswith("<svg")


def main():
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
                print(f"ok   {name}")
            except AssertionError as exc:
                failures += 1
                print(f"FAIL {name}: {exc}")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
