"""Acceptance suite: one test per criterion, at the stated tolerances.

Each test prints a single ``ACCEPTANCE n: PASS`` line (visible with
``pytest -s`` or in the captured output) after its assertions, including
the measured wall time where the criterion carries a runtime budget.
"""

import json
import time
from fractions import Fraction

import numpy as np

from gmsfp import (
    BoundedFunctional,
    ConstWeight,
    ControlFunctions,
    HalvingMap,
    IdentityMap,
    MappingPair,
    SampledIntervalSpace,
    ScaleFn,
    SequenceRecord,
    bruteforce_coincidences,
    check_admissible,
    check_orbit_regularity,
    check_rational_contraction,
    check_weighted_contraction,
    coupled_step,
    coupled_value_iteration,
    find_coincidence,
    four_point_space,
    jungck_iterate,
    random_dp_problem,
    reciprocal_probe,
    reciprocal_space,
    solve_system,
    sup_gap_bound,
    sup_norm_distance,
    system_residual,
)
from gmsfp.cli import main

HALVING = MappingPair(HalvingMap(), IdentityMap())


def report_pass(n: int, detail: str) -> None:
    print(f"ACCEPTANCE {n}: PASS ({detail})")


def run_cli(tmp_path, *argv):
    out = tmp_path / "report.json"
    code = main([*argv, "--output", str(out)])
    return code, json.loads(out.read_text())


def test_criterion_1_four_point_fixture_validation(tmp_path):
    """valid_gms with exhaustive quadruples, exact-rational triangle
    violation 8/9 > 7/9 at (5/6, 2/3, 7/12), under 1 s."""
    fixture = tmp_path / "four_point.json"
    fixture.write_text(json.dumps(four_point_space().to_json_dict()))
    start = time.perf_counter()
    code, report = run_cli(tmp_path, "validate-gms", str(fixture))
    elapsed = time.perf_counter() - start
    assert code == 0
    assert report["valid_gms"] is True
    assert report["sampled"] is False  # exhaustive quadruple verification
    cited = [
        v
        for v in report["triangle_violations"]
        if v["witness"] == ["5/6", "2/3", "7/12"]
    ]
    assert cited, "the stated triangle violation must be reported"
    assert cited[0]["lhs"] == "8/9"  # exact rational serialization
    assert cited[0]["rhs"] == "7/9"
    assert elapsed < 1.0
    report_pass(1, f"{elapsed:.3f} s")


def test_criterion_2_reciprocal_fixture_pathologies(tmp_path):
    """(1/n) flagged convergent-but-not-Cauchy with witness distance 1,
    plus a discontinuity witness, under 1 s."""
    space_file = tmp_path / "reciprocal.json"
    space_file.write_text(json.dumps(reciprocal_space(64).to_json_dict()))
    probes_file = tmp_path / "probes.json"
    probes_file.write_text(
        json.dumps(
            {"probes": [{"points": list(reciprocal_probe(64).points), "candidate_limit": "0"}]}
        )
    )
    start = time.perf_counter()
    code, report = run_cli(
        tmp_path, "detect-pathologies", str(space_file), "--probes", str(probes_file)
    )
    elapsed = time.perf_counter() - start
    assert code == 0
    finding = report["probes"][0]
    assert finding["convergent_not_cauchy"] is True
    assert finding["cauchy_witness"]["distance"] == "1"
    assert finding["multiple_limits"] is True
    assert "discontinuity_witness" in finding
    assert elapsed < 1.0
    report_pass(2, f"{elapsed:.3f} s")


def test_criterion_3_halving_on_dyadic_grid():
    """Condition check over 10^6 sampled grid pairs, convergence to 0
    within 1e-9 in <= 40 steps, monotone steps, brute-force uniqueness;
    all under 10 s."""
    start = time.perf_counter()
    grid = SampledIntervalSpace(0.0, 1.0, 2**20 + 1)
    ctrl = ControlFunctions(phi=ScaleFn(Fraction(1, 2)))

    condition = check_rational_contraction(grid, HALVING, ctrl, sample_pairs=10**6, seed=2024)
    assert condition.holds
    assert condition.pairs_checked == 10**6

    trace = jungck_iterate(grid, HALVING, 1.0, tol=1e-9)
    assert trace.status in ("converged", "coincidence_found_early")
    assert trace.iterations <= 40
    assert grid.distance(trace.final, 0.0) <= 1e-9

    # strict decrease at every scale above one grid pitch; the discrete
    # floor admits a single pitch-sized repeat before the exact-zero step
    repeats = 0
    for a, b in zip(trace.step_dist, trace.step_dist[1:]):
        if a == b:
            repeats += 1
            assert a == grid.pitch
        else:
            assert a > b
    assert repeats <= 1

    coincidences = bruteforce_coincidences(grid, HALVING, tol=1e-9)
    assert coincidences == [0.0]
    result = find_coincidence(
        grid, HALVING, ctrl, 1.0, tol=1e-9, checker_kwargs={"sample_pairs": 10**5}
    )
    assert result.value == 0.0
    assert result.is_common_fixed_point
    assert result.unique_within_space

    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    report_pass(3, f"{trace.iterations} steps, {elapsed:.2f} s")


def test_criterion_4_linear_condition_specializes():
    """On 50 seeded random finite instances where the linear condition
    holds, the rational condition with the derived scale and C = L also
    holds; zero counterexamples."""
    from conftest import linear_holding_instances
    from gmsfp import check_rational_contraction as check_rational

    instances = linear_holding_instances(50, start_seed=7000, positive_total=True)
    assert len(instances) == 50
    counterexamples = 0
    for space, pair, ctrl in instances:
        total = ctrl.a1 + ctrl.a2 + ctrl.a3
        derived = ControlFunctions(phi=ScaleFn(total), C=ctrl.L)
        if not check_rational(space, pair, derived).holds:
            counterexamples += 1
    assert counterexamples == 0
    report_pass(4, "50 instances, 0 counterexamples")


def test_criterion_5_weighted_machinery_on_halving():
    """With beta = 1, phi = t, psi = t/2: the weighted condition,
    admissibility and orbit regularity all hold, and the weighted-path
    iteration reaches the same unique point 0 within 1e-9."""
    grid = SampledIntervalSpace(0.0, 1.0, 2**20 + 1)
    ctrl = ControlFunctions(
        phi=ScaleFn(1), psi=ScaleFn(Fraction(1, 2)), beta=ConstWeight(1)
    )

    condition = check_weighted_contraction(grid, HALVING, ctrl, sample_pairs=10**5, seed=5)
    assert condition.holds
    assert check_admissible(grid, HALVING, ctrl.beta, sample_pairs=20_000, seed=5).holds

    result = find_coincidence(
        grid, HALVING, ctrl, 1.0, tol=1e-9,
        condition="weighted", checker_kwargs={"sample_pairs": 10**5},
    )
    assert grid.distance(result.value, 0.0) <= 1e-9
    assert result.unique_within_space

    orbit = SequenceRecord(result.trace.z, candidate_limit=0.0)
    regular = check_orbit_regularity(grid, orbit, 0.0, ctrl.beta)
    assert regular.holds
    report_pass(5, f"weighted iteration reached {result.value!r}")


def test_criterion_6_sup_gap_property_suite():
    """10^4 seeded random functional pairs satisfy the sup-gap
    inequality, under 1 s."""
    rng = np.random.default_rng(6021)
    start = time.perf_counter()
    for _ in range(10_000):
        n = int(rng.integers(1, 7))
        states = tuple(f"s{i}" for i in range(n))
        f1 = BoundedFunctional.from_array(states, rng.uniform(-100.0, 100.0, n))
        f2 = BoundedFunctional.from_array(states, rng.uniform(-100.0, 100.0, n))
        lhs, rhs = sup_gap_bound(f1, f2)
        assert lhs <= rhs + 1e-12
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    report_pass(6, f"10000 pairs, {elapsed:.2f} s")


def test_criterion_7_single_state_system(tmp_path):
    """solve-dp returns w = z = 2 within 1e-9, residual <= 1e-9, at most
    100 iterations."""
    problem_file = tmp_path / "onestate.json"
    problem_file.write_text(
        json.dumps(
            {
                "states": ["s"],
                "decisions": ["e"],
                "h": [[1.0]],
                "G": [[0]],
                "F": {"kind": "affine", "c": 0.5, "r": [[0.0]]},
                "lipschitz_C": 0.5,
            }
        )
    )
    code, report = run_cli(tmp_path, "solve-dp", str(problem_file), "--tol", "1e-9")
    assert code == 0
    assert abs(report["w"]["s"] - 2.0) <= 1e-9
    assert abs(report["z"]["s"] - 2.0) <= 1e-9
    assert report["residual"] <= 1e-9
    assert report["iterations"] <= 100
    report_pass(7, f"{report['iterations']} iterations, residual {report['residual']:.2e}")


def _criterion_8_problems():
    problems = []
    seed = 0
    for i in range(100):
        c = (0.3, 0.5, 0.9)[i % 3]
        problems.append(random_dp_problem(8000 + seed, c=c))
        seed += 1
    return problems


def test_criterion_8_oracle_cross_validation():
    """100 seeded random problems: engine agrees with the independent
    synchronous oracle within 1e-8 sup norm, and three restarts agree
    within 10*tol; under 30 s."""
    tol = 1e-9
    start = time.perf_counter()
    rng = np.random.default_rng(808)
    worst_gap = 0.0
    worst_restart = 0.0
    for problem in _criterion_8_problems():
        engine = solve_system(problem, tol=tol)
        oracle = coupled_value_iteration(problem, tol=tol)
        worst_gap = max(
            worst_gap,
            sup_norm_distance(engine.w, oracle.w),
            sup_norm_distance(engine.z, oracle.z),
        )
        starts = (
            BoundedFunctional.constant(problem.states, 0.0),
            BoundedFunctional.constant(problem.states, 100.0),
            BoundedFunctional.from_array(
                problem.states, rng.uniform(-10.0, 10.0, len(problem.states))
            ),
        )
        restarts = [solve_system(problem, tol=tol, w0=s) for s in starts]
        for a in restarts:
            for b in restarts:
                worst_restart = max(worst_restart, sup_norm_distance(a.w, b.w))
        assert engine.residual <= tol
    elapsed = time.perf_counter() - start
    assert worst_gap <= 1e-8
    assert worst_restart <= 10 * tol
    assert elapsed < 30.0
    report_pass(8, f"gap {worst_gap:.2e}, restart spread {worst_restart:.2e}, {elapsed:.1f} s")


def test_criterion_9_output_bound_never_fires():
    """The a-priori output bound holds for every coupled-operator
    application across the random suite (it is asserted inside every
    call, so completing without BoundednessViolation is the proof)."""
    rng = np.random.default_rng(909)
    applications = 0
    for problem in _criterion_8_problems():
        n = len(problem.states)
        probes = [
            BoundedFunctional.constant(problem.states, 0.0),
            BoundedFunctional.constant(problem.states, 100.0),
            BoundedFunctional.from_array(problem.states, rng.uniform(-50.0, 50.0, n)),
        ]
        for w in probes:
            coupled_step(problem, w)
            applications += 1
        solution = solve_system(problem, tol=1e-9)
        assert system_residual(problem, solution.w, solution.z) <= 1e-9
    assert applications == 300
    report_pass(9, f"{applications} direct applications plus every solver step")
