"""Independent brute-force references and seeded instance generators.

Everything here is intentionally naive and kept on a separate code path
from the engines it cross-checks; agreement between the two routes is
what the test suite certifies.  Determinism contract: all generators
draw only integers from Python's ``random.Random`` (the standard
Mersenne Twister, MT19937), so a fixed 64-bit seed reproduces every
table bit-exactly from the integer stream on any platform.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .dynprog import BoundedFunctional, DPProblem, DPSolution, RewardRule
from .errors import GenerationExhausted, MalformedTable, NoConvergence
from .gms_core import FiniteGMS, validate_gms

#: Attempt budget for rejection sampling of gms_only tables.
REJECTION_BUDGET = 100_000

TABLE_KINDS = ("metric", "gms_only", "arbitrary_symmetric")

#: Denominator of the rational grid generated tables draw from.
_VALUE_DENOMINATOR = 64


@dataclass(frozen=True)
class RandomInstanceSpec:
    """Recipe for one random distance table.

    ``table_kind``: 'metric' draws entries from the upper half of the
    value range, where the triangle inequality holds automatically;
    'gms_only' draws from [0.4, 1.0] * high (any three-hop path then
    dominates any single entry, so the quadrilateral inequality is
    automatic) and rejection-samples against the validator until at
    least one triangle violation appears; 'arbitrary_symmetric' is an
    unconstrained symmetric table with zero diagonal.
    """

    seed: int
    point_count: int
    table_kind: str = "metric"
    value_range: Tuple[float, float] = (0.0, 1.0)

    def __post_init__(self):
        if self.table_kind not in TABLE_KINDS:
            raise MalformedTable(f"unknown table kind {self.table_kind!r}")
        if not 2 <= self.point_count <= 64:
            raise MalformedTable("point_count must be in [2, 64]")
        lo, hi = self.value_range
        if not 0 <= lo < hi:
            raise MalformedTable("value_range needs 0 <= low < high")


def _rational_in(rng: random.Random, lo: Fraction, hi: Fraction) -> Fraction:
    lo_n = int(lo * _VALUE_DENOMINATOR)
    hi_n = int(hi * _VALUE_DENOMINATOR)
    return Fraction(rng.randrange(lo_n, hi_n + 1), _VALUE_DENOMINATOR)


def _symmetric_table(rng: random.Random, n: int, lo: Fraction, hi: Fraction):
    table = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = _rational_in(rng, lo, hi)
            table[i][j] = v
            table[j][i] = v
    return table


def generate_space(spec: RandomInstanceSpec, rejection_budget: int = REJECTION_BUDGET) -> FiniteGMS:
    """Generate one deterministic table per the spec's kind.

    gms_only raises :class:`GenerationExhausted` if the rejection budget
    runs out (certain at point_count 2, where no triangle exists to
    violate; rare above that).
    """
    rng = random.Random(spec.seed)
    n = spec.point_count
    hi = Fraction(spec.value_range[1]).limit_denominator(_VALUE_DENOMINATOR)
    labels = [f"p{i}" for i in range(n)]

    if spec.table_kind == "metric":
        table = _symmetric_table(rng, n, hi / 2, hi)
        return FiniteGMS(labels, table)

    if spec.table_kind == "arbitrary_symmetric":
        table = _symmetric_table(rng, n, Fraction(0), hi)
        return FiniteGMS(labels, table)

    lo = hi * Fraction(2, 5)
    for _ in range(rejection_budget):
        table = _symmetric_table(rng, n, lo, hi)
        space = FiniteGMS(labels, table)
        report = validate_gms(space)
        if report.valid_gms and report.triangle_violations:
            return space
    raise GenerationExhausted(
        f"no gms_only table of size {n} within {rejection_budget} attempts"
    )


def random_dp_problem(
    seed: int,
    max_states: int = 5,
    max_decisions: int = 4,
    c: float = 0.5,
    reward_scale: int = 10,
) -> DPProblem:
    """A small random coupled-system instance (deterministic per seed).

    Rewards are integer-valued in [-reward_scale, reward_scale] (drawn
    from the integer stream only), transitions are uniform state
    indices, and F is affine with the requested Lipschitz constant.
    """
    rng = random.Random(seed)
    ns = rng.randrange(1, max_states + 1)
    nd = rng.randrange(1, max_decisions + 1)
    h = tuple(
        tuple(float(rng.randrange(-reward_scale, reward_scale + 1)) for _ in range(nd))
        for _ in range(ns)
    )
    g = tuple(tuple(rng.randrange(ns) for _ in range(nd)) for _ in range(ns))
    r = tuple(
        tuple(float(rng.randrange(-reward_scale, reward_scale + 1)) for _ in range(nd))
        for _ in range(ns)
    )
    return DPProblem(
        states=tuple(f"s{i}" for i in range(ns)),
        decisions=tuple(f"d{j}" for j in range(nd)),
        h=h,
        G=g,
        F=RewardRule(kind="affine", c=float(c), r=r),
        lipschitz_C=abs(float(c)),
    )


def coupled_value_iteration(
    problem: DPProblem, tol: float = 1e-9, max_iter: int = 10_000
) -> DPSolution:
    """Plain synchronous iteration (w, z) <- (T z, T w) from (0, 0).

    Deliberately re-derives the max loop inline — it must never share
    the solver's operator code path, since cross-validating the two is
    the whole point.  Requires lipschitz_C < 1 and stops once the joint
    system defect falls below tol*(1-c)/2, which pins both components
    within tol of the unique solution.
    """
    c = problem.lipschitz_C
    if not c < 1:
        raise MalformedTable("oracle requires lipschitz_C < 1")
    states = problem.states
    ns, nd = len(states), len(problem.decisions)
    w = [0.0] * ns
    z = [0.0] * ns

    def sweep(source: List[float]) -> List[float]:
        out = []
        for a in range(ns):
            best = None
            for b in range(nd):
                t = source[problem.G[a][b]]
                score = problem.h[a][b] + problem.F.value(a, b, t)
                if best is None or score > best:
                    best = score
            out.append(best)
        return out

    threshold = tol * (1.0 - c) / 2.0
    history = []
    for k in range(1, max_iter + 1):
        new_w = sweep(z)
        new_z = sweep(w)
        history.append(max(abs(a - b) for a, b in zip(new_w, w)))
        w, z = new_w, new_z
        defect = max(
            max(abs(a - b) for a, b in zip(w, sweep(z))),
            max(abs(a - b) for a, b in zip(z, sweep(w))),
        )
        if defect <= threshold:
            return DPSolution(
                w=BoundedFunctional(states, tuple(w)),
                z=BoundedFunctional(states, tuple(z)),
                residual=defect,
                iterations=k,
                step_history=tuple(history),
            )
    raise NoConvergence(f"oracle did not converge in {max_iter} sweeps")
