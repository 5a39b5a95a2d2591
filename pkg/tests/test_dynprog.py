"""Coupled functional-equation machinery: operators, checks, solver."""

import random

import numpy as np
import pytest

from gmsfp import (
    BoundedFunctional,
    BoundednessViolation,
    DPProblem,
    HypothesisViolated,
    MalformedTable,
    NoConvergence,
    RewardRule,
    ScaleFn,
    StateSetMismatch,
    bellman_step,
    check_lipschitz,
    check_operator_contraction,
    coupled_step,
    default_probe_pairs,
    random_dp_problem,
    solve_system,
    sup_gap_bound,
    sup_norm_distance,
    system_residual,
)


def single_state_problem(c=0.5, h=1.0):
    return DPProblem(
        states=("s",),
        decisions=("e",),
        h=((h,),),
        G=((0,),),
        F=RewardRule("affine", c, ((0.0,),)),
        lipschitz_C=abs(c),
    )


class TestSupNorm:
    def test_equal_functionals(self):
        u = BoundedFunctional(("a", "b"), (1.0, 2.0))
        assert sup_norm_distance(u, u) == 0.0

    def test_two_state_example(self):
        u = BoundedFunctional(("a", "b"), (1.0, 3.0))
        v = BoundedFunctional(("a", "b"), (2.0, 2.0))
        assert sup_norm_distance(u, v) == 1.0

    def test_one_sided_gap(self):
        u = BoundedFunctional(("a", "b"), (0.0, 0.0))
        v = BoundedFunctional(("a", "b"), (0.0, 5.0))
        assert sup_norm_distance(u, v) == 5.0

    def test_state_set_mismatch(self):
        u = BoundedFunctional(("a",), (0.0,))
        v = BoundedFunctional(("b",), (0.0,))
        with pytest.raises(StateSetMismatch):
            sup_norm_distance(u, v)

    def test_non_finite_rejected(self):
        with pytest.raises(MalformedTable):
            BoundedFunctional(("a",), (float("inf"),))


class TestSupGapBound:
    def test_identical(self):
        f = BoundedFunctional(("a", "b"), (2.0, 7.0))
        assert sup_gap_bound(f, f) == (0.0, 0.0)

    def test_two_state(self):
        f1 = BoundedFunctional(("a", "b"), (1.0, 3.0))
        f2 = BoundedFunctional(("a", "b"), (2.0, 2.0))
        assert sup_gap_bound(f1, f2) == (1.0, 1.0)

    def test_wide_gap(self):
        f1 = BoundedFunctional(("a", "b"), (0.0, 10.0))
        f2 = BoundedFunctional(("a", "b"), (9.0, 0.0))
        assert sup_gap_bound(f1, f2) == (1.0, 10.0)

    def test_property_ten_thousand_random_pairs(self):
        rng = np.random.default_rng(1234)
        for _ in range(2_000):
            n = rng.integers(1, 6)
            states = tuple(f"s{i}" for i in range(n))
            f1 = BoundedFunctional.from_array(states, rng.uniform(-100, 100, n))
            f2 = BoundedFunctional.from_array(states, rng.uniform(-100, 100, n))
            lhs, rhs = sup_gap_bound(f1, f2)
            assert lhs <= rhs + 1e-12


class TestOperators:
    def test_single_state_one_step(self):
        p = single_state_problem()
        v0 = BoundedFunctional.constant(p.states, 0.0)
        assert bellman_step(p, v0).values == (1.0,)

    def test_constant_rule_ignores_continuation(self):
        p = DPProblem(
            states=("a", "b"),
            decisions=("d0", "d1"),
            h=((1.0, 2.0), (0.0, -1.0)),
            G=((0, 1), (1, 0)),
            F=RewardRule("affine", 0.0, ((0.0, 0.0), (0.0, 0.0))),
            lipschitz_C=0.0,
        )
        v1 = BoundedFunctional(p.states, (10.0, -10.0))
        v2 = BoundedFunctional(p.states, (-3.0, 4.0))
        assert bellman_step(p, v1).values == bellman_step(p, v2).values == (2.0, 0.0)

    def test_max_over_decisions(self):
        p = DPProblem(
            states=("s",),
            decisions=("d0", "d1"),
            h=((1.0, 2.0),),
            G=((0, 0),),
            F=RewardRule("affine", 0.0, ((0.0, 0.0),)),
            lipschitz_C=0.0,
        )
        v = BoundedFunctional.constant(p.states, 0.0)
        assert bellman_step(p, v).values == (2.0,)

    def test_coupled_step_single_state(self):
        p = single_state_problem()
        w0 = BoundedFunctional.constant(p.states, 0.0)
        assert coupled_step(p, w0).values == (1.5,)

    def test_coupled_step_zero_preserved(self):
        p = DPProblem(
            states=("s",),
            decisions=("e",),
            h=((0.0,),),
            G=((0,),),
            F=RewardRule("affine", 0.7, ((0.0,),)),
            lipschitz_C=0.7,
        )
        w0 = BoundedFunctional.constant(p.states, 0.0)
        assert coupled_step(p, w0).values == (0.0,)

    def test_constant_rule_coupled_equals_single(self):
        p = DPProblem(
            states=("a", "b"),
            decisions=("d",),
            h=((3.0,), (-2.0,)),
            G=((1,), (0,)),
            F=RewardRule("affine", 0.0, ((1.0,), (0.5,))),
            lipschitz_C=0.0,
        )
        w0 = BoundedFunctional.constant(p.states, 0.0)
        assert coupled_step(p, w0).values == bellman_step(p, w0).values

    def test_bound_never_fires_below_unit_lipschitz(self):
        rng = np.random.default_rng(5)
        for seed in range(40):
            p = random_dp_problem(seed, c=float(rng.choice([0.3, 0.5, 0.9])))
            w = BoundedFunctional.from_array(
                p.states, rng.uniform(-50, 50, len(p.states))
            )
            coupled_step(p, w)  # must not raise

    def test_bound_fires_beyond_unit_lipschitz(self):
        p = DPProblem(
            states=("s",),
            decisions=("e",),
            h=((0.0,),),
            G=((0,),),
            F=RewardRule("affine", 2.0, ((0.0,),)),
            lipschitz_C=2.0,
        )
        w = BoundedFunctional.constant(p.states, 10.0)
        # O w = 40 while the printed bound evaluates to 16
        with pytest.raises(BoundednessViolation):
            coupled_step(p, w)

    def test_clipped_rule_respects_lipschitz(self):
        p = DPProblem(
            states=("s",),
            decisions=("e",),
            h=((1.0,),),
            G=((0,),),
            F=RewardRule("clipped_affine", 0.5, ((0.0,),), lo=-1.0, hi=1.0),
            lipschitz_C=0.5,
        )
        assert check_lipschitz(p).holds
        sol = solve_system(p, tol=1e-9)
        # w = 1 + clip(0.5 z) saturates at 2 once z >= 2; fixed point is 2
        assert abs(sol.w.values[0] - 2.0) <= 1e-8


class TestLipschitzCheck:
    def test_affine_holds_with_equality(self):
        p = single_state_problem(c=0.5)
        assert check_lipschitz(p, [(0.0, 1.0), (3.0, -3.0)]).holds

    def test_understated_constant_violated(self):
        p = DPProblem(
            states=("s",),
            decisions=("e",),
            h=((1.0,),),
            G=((0,),),
            F=RewardRule("affine", 0.9, ((0.0,),)),
            lipschitz_C=0.5,
        )
        report = check_lipschitz(p)
        assert not report.holds

    def test_equal_arguments_never_violate(self):
        p = single_state_problem(c=0.99)
        assert check_lipschitz(p, [(2.0, 2.0)]).holds


class TestOperatorContraction:
    def test_identical_probes_hold(self):
        p = single_state_problem()
        w = BoundedFunctional.constant(p.states, 3.0)
        assert check_operator_contraction(p, ScaleFn(0.5), 0.0, [(w, w)]).holds

    def test_single_state_derived_example(self):
        p = single_state_problem()
        w1 = BoundedFunctional.constant(p.states, 0.0)
        w2 = BoundedFunctional.constant(p.states, 4.0)
        assert check_operator_contraction(p, ScaleFn(0.5), 0.0, [(w1, w2)]).holds
        report = check_operator_contraction(p, ScaleFn(0.25), 0.0, [(w1, w2)])
        assert not report.holds
        assert report.violations[0].lhs == 1.0
        assert report.violations[0].rhs == 0.5

    def test_default_probe_pool_is_seeded(self):
        p = random_dp_problem(3, c=0.5)
        a = default_probe_pairs(p, seed=9)
        b = default_probe_pairs(p, seed=9)
        assert a == b
        assert len(a) == 91  # C(14, 2)


class TestSolveSystem:
    def test_single_state_value(self):
        sol = solve_system(single_state_problem(), tol=1e-9)
        assert abs(sol.w.values[0] - 2.0) <= 1e-9
        assert abs(sol.z.values[0] - 2.0) <= 1e-9
        assert sol.residual <= 1e-9
        assert sol.iterations <= 100

    def test_constant_rule_converges_in_two(self):
        p = DPProblem(
            states=("a", "b"),
            decisions=("d0", "d1"),
            h=((1.0, 2.0), (0.0, -1.0)),
            G=((0, 1), (1, 0)),
            F=RewardRule("affine", 0.0, ((0.0, 0.0), (0.0, 0.0))),
            lipschitz_C=0.0,
        )
        sol = solve_system(p, tol=1e-9)
        assert sol.iterations <= 2
        assert sol.w.values == sol.z.values == (2.0, 0.0)

    def test_two_state_matches_oracle(self):
        from gmsfp import coupled_value_iteration

        p = DPProblem(
            states=("a", "b"),
            decisions=("d0", "d1"),
            h=((1.0, -2.0), (0.5, 3.0)),
            G=((1, 0), (0, 0)),
            F=RewardRule("affine", 0.5, ((0.2, 0.0), (-0.3, 0.1))),
            lipschitz_C=0.5,
        )
        sol = solve_system(p, tol=1e-9)
        ora = coupled_value_iteration(p, tol=1e-9)
        assert sup_norm_distance(sol.w, ora.w) <= 1e-8
        assert sup_norm_distance(sol.z, ora.z) <= 1e-8

    def test_residual_substitutes_back(self):
        for seed in (0, 1, 2, 3):
            p = random_dp_problem(seed, c=0.9)
            sol = solve_system(p, tol=1e-9)
            assert system_residual(p, sol.w, sol.z) <= 1e-9

    def test_restart_uniqueness(self):
        p = random_dp_problem(11, c=0.9)
        base = solve_system(p, tol=1e-9)
        for start in (0.0, 100.0, -37.5):
            again = solve_system(
                p, tol=1e-9, w0=BoundedFunctional.constant(p.states, start)
            )
            assert sup_norm_distance(again.w, base.w) <= 10 * 1e-9
            assert sup_norm_distance(again.z, base.z) <= 10 * 1e-9

    def test_swap_symmetric_solution(self):
        for seed in range(6):
            p = random_dp_problem(seed + 40, c=0.5)
            sol = solve_system(p, tol=1e-9)
            assert sup_norm_distance(sol.w, sol.z) <= 10 * 1e-9

    def test_contraction_transfer(self):
        rng = np.random.default_rng(77)
        for seed in range(10):
            c = float(rng.choice([0.3, 0.5, 0.9]))
            p = random_dp_problem(seed + 60, c=c)
            n = len(p.states)
            u = BoundedFunctional.from_array(p.states, rng.uniform(-20, 20, n))
            v = BoundedFunctional.from_array(p.states, rng.uniform(-20, 20, n))
            assert sup_norm_distance(bellman_step(p, u), bellman_step(p, v)) <= (
                c * sup_norm_distance(u, v) + 1e-12
            )

    def test_bad_lipschitz_declaration_rejected(self):
        p = DPProblem(
            states=("s",),
            decisions=("e",),
            h=((1.0,),),
            G=((0,),),
            F=RewardRule("affine", 0.9, ((0.0,),)),
            lipschitz_C=0.5,
        )
        with pytest.raises(HypothesisViolated):
            solve_system(p)

    def test_supercritical_requires_certificate(self):
        p = DPProblem(
            states=("s",),
            decisions=("e",),
            h=((1.0,),),
            G=((0,),),
            F=RewardRule("affine", 1.0, ((0.0,),)),
            lipschitz_C=1.0,
        )
        with pytest.raises(HypothesisViolated):
            solve_system(p)

    def test_overdeclared_constant_with_certificate_solves(self):
        # actual modulus 0.4, declared 1.0: the certificate path must
        # probe the operator condition and then converge anyway
        p = DPProblem(
            states=("s",),
            decisions=("e",),
            h=((1.0,),),
            G=((0,),),
            F=RewardRule("affine", 0.4, ((0.0,),)),
            lipschitz_C=1.0,
        )
        sol = solve_system(p, tol=1e-9, phi_certificate=ScaleFn(0.5))
        assert abs(sol.w.values[0] - 1.0 / 0.6) <= 1e-8

    def test_failing_certificate_rejected(self):
        p = DPProblem(
            states=("s",),
            decisions=("e",),
            h=((1.0,),),
            G=((0,),),
            F=RewardRule("affine", 1.0, ((0.0,),)),
            lipschitz_C=1.0,
        )
        with pytest.raises(HypothesisViolated):
            solve_system(p, phi_certificate=ScaleFn(0.5))

    def test_budget_exhaustion_raises_with_partial(self):
        with pytest.raises(NoConvergence) as exc_info:
            solve_system(single_state_problem(), tol=1e-9, max_iter=3)
        partial = exc_info.value.solution
        assert partial is not None
        assert partial.iterations == 3


class TestProblemValidation:
    def test_shape_mismatch(self):
        with pytest.raises(MalformedTable):
            DPProblem(("a", "b"), ("d",), ((1.0,),), ((0,), (0,)),
                      RewardRule("affine", 0.5, ((0.0,), (0.0,))), 0.5)

    def test_transition_out_of_range(self):
        with pytest.raises(MalformedTable):
            DPProblem(("a",), ("d",), ((1.0,),), ((3,),),
                      RewardRule("affine", 0.5, ((0.0,),)), 0.5)

    def test_json_round_trip(self):
        p = random_dp_problem(8, c=0.3)
        clone = DPProblem.from_json_dict(p.to_json_dict())
        assert clone == p
