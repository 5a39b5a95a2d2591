"""Coupled functional-equation systems on finite state/decision sets.

The system solved here couples two bounded functionals w, z on a state
set S through the same sup-composition:

    w(a) = max_{b in E} { h(a,b) + F(a, b, z(G(a,b))) }
    z(a) = max_{b in E} { h(a,b) + F(a, b, w(G(a,b))) }

with h a reward table, G a transition table and F a reward-composition
rule that is Lipschitz in its scalar argument.  Writing T for the
one-step operator (:func:`bellman_step`), the system reads w = T z,
z = T w, and one round of the coupled substitution is the operator
O = T∘T (:func:`coupled_step`).  Solving the pair is exactly a
coincidence problem for (A, B) = (O, T) on the sup-norm function space,
and :func:`solve_system` drives it through the Jungck engine of
:mod:`gmsfp.iteration`: the selector realizing "pick u with T u = z"
is total because choosing u = T w_k satisfies T u = O w_k identically.

The ``sup`` over decisions is a max over a finite table; infinite
decision sets are out of scope.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .contractions import ConditionReport, PairViolation, ScalarFn, _make_report
from .errors import (
    BoundednessViolation,
    HypothesisViolated,
    MalformedTable,
    NoConvergence,
    SelectorFailure,
    StateSetMismatch,
)
from .iteration import STATUS_MAX_ITER, jungck_iterate

#: Default scalar pairs on which the Lipschitz property is sampled.
DEFAULT_T_SAMPLES: Tuple[Tuple[float, float], ...] = (
    (0.0, 1.0),
    (-1.0, 1.0),
    (0.0, 100.0),
    (2.5, 2.5),
    (-50.0, 50.0),
    (1e-6, -1e-6),
)


# ---------------------------------------------------------------------------
# Problem data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RewardRule:
    """Reward-composition family F(a, b, t).

    ``affine``: F = c*t + r(a,b), Lipschitz constant |c|.
    ``clipped_affine``: the affine value clipped into [lo, hi]; clipping
    is 1-Lipschitz so |c| still bounds the modulus.
    """

    kind: str
    c: float
    r: Tuple[Tuple[float, ...], ...]
    lo: Optional[float] = None
    hi: Optional[float] = None

    def __post_init__(self):
        if self.kind not in ("affine", "clipped_affine"):
            raise MalformedTable(f"unknown reward rule kind {self.kind!r}")
        object.__setattr__(self, "c", float(self.c))
        object.__setattr__(
            self, "r", tuple(tuple(float(v) for v in row) for row in self.r)
        )
        if self.kind == "clipped_affine":
            if self.lo is None or self.hi is None or not self.lo <= self.hi:
                raise MalformedTable("clipped_affine needs lo <= hi")

    @cached_property
    def r_array(self) -> np.ndarray:
        return np.array(self.r, dtype=np.float64)

    @property
    def lipschitz_bound(self) -> float:
        return abs(self.c)

    def value_matrix(self, t) -> np.ndarray:
        """F evaluated at every (a, b); ``t`` is a scalar or an S x E
        array of continuation values."""
        out = self.c * np.asarray(t, dtype=np.float64) + self.r_array
        if self.kind == "clipped_affine":
            out = np.clip(out, self.lo, self.hi)
        return out

    def value(self, a: int, b: int, t: float) -> float:
        v = self.c * t + self.r[a][b]
        if self.kind == "clipped_affine":
            v = min(max(v, self.lo), self.hi)
        return v

    def to_json_dict(self) -> dict:
        out = {"kind": self.kind, "c": self.c, "r": [list(row) for row in self.r]}
        if self.kind == "clipped_affine":
            out["lo"] = self.lo
            out["hi"] = self.hi
        return out

    @classmethod
    def from_json_dict(cls, obj: dict) -> "RewardRule":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise MalformedTable("reward rule needs a 'kind'")
        return cls(
            kind=obj["kind"],
            c=obj["c"],
            r=tuple(tuple(row) for row in obj["r"]),
            lo=obj.get("lo"),
            hi=obj.get("hi"),
        )


@dataclass(frozen=True)
class DPProblem:
    """Finite problem tables: h, G over S x E plus the reward rule.

    ``G`` holds state *indices*.  Construction checks shapes, finiteness
    and G-membership; whether the declared ``lipschitz_C`` actually
    bounds F's modulus is the job of :func:`check_lipschitz`, which
    reports rather than raises.
    """

    states: Tuple[str, ...]
    decisions: Tuple[str, ...]
    h: Tuple[Tuple[float, ...], ...]
    G: Tuple[Tuple[int, ...], ...]
    F: RewardRule
    lipschitz_C: float

    def __post_init__(self):
        states = tuple(str(s) for s in self.states)
        decisions = tuple(str(d) for d in self.decisions)
        if not states or not decisions:
            raise MalformedTable("need at least one state and one decision")
        ns, nd = len(states), len(decisions)
        h = tuple(tuple(float(v) for v in row) for row in self.h)
        G = tuple(tuple(int(v) for v in row) for row in self.G)
        for name, table in (("h", h), ("G", G), ("F.r", self.F.r)):
            if len(table) != ns or any(len(row) != nd for row in table):
                raise MalformedTable(f"{name} table must be {ns}x{nd}")
        if not np.all(np.isfinite(np.array(h))):
            raise MalformedTable("h has non-finite entries")
        for row in G:
            for idx in row:
                if not 0 <= idx < ns:
                    raise MalformedTable(f"G entry {idx} is not a state index")
        for probe in (0.0, 1.0):
            if not np.all(np.isfinite(self.F.value_matrix(probe))):
                raise MalformedTable(f"F(.,.,{probe}) has non-finite entries")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "decisions", decisions)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "G", G)
        object.__setattr__(self, "lipschitz_C", float(self.lipschitz_C))
        if self.lipschitz_C < 0:
            raise MalformedTable("lipschitz_C must be nonnegative")

    @cached_property
    def h_array(self) -> np.ndarray:
        return np.array(self.h, dtype=np.float64)

    @cached_property
    def g_array(self) -> np.ndarray:
        return np.array(self.G, dtype=np.intp)

    @classmethod
    def from_json_dict(cls, obj: dict) -> "DPProblem":
        try:
            return cls(
                states=tuple(obj["states"]),
                decisions=tuple(obj["decisions"]),
                h=tuple(tuple(row) for row in obj["h"]),
                G=tuple(tuple(row) for row in obj["G"]),
                F=RewardRule.from_json_dict(obj["F"]),
                lipschitz_C=obj["lipschitz_C"],
            )
        except (TypeError, KeyError) as exc:
            raise MalformedTable(f"bad DP problem JSON: {exc}") from exc

    def to_json_dict(self) -> dict:
        return {
            "states": list(self.states),
            "decisions": list(self.decisions),
            "h": [list(row) for row in self.h],
            "G": [list(row) for row in self.G],
            "F": self.F.to_json_dict(),
            "lipschitz_C": self.lipschitz_C,
        }


@dataclass(frozen=True)
class BoundedFunctional:
    """A real-valued functional on the state set (finite everywhere)."""

    states: Tuple[str, ...]
    values: Tuple[float, ...]

    def __post_init__(self):
        states = tuple(str(s) for s in self.states)
        values = tuple(float(v) for v in self.values)
        if len(states) != len(values):
            raise MalformedTable("one value per state required")
        if not np.all(np.isfinite(np.array(values))):
            raise MalformedTable("functional has non-finite values")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "values", values)

    @classmethod
    def constant(cls, states: Sequence[str], value: float) -> "BoundedFunctional":
        return cls(tuple(states), tuple(float(value) for _ in states))

    @classmethod
    def from_array(cls, states: Sequence[str], arr: np.ndarray) -> "BoundedFunctional":
        return cls(tuple(states), tuple(float(v) for v in arr))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.values, dtype=np.float64)

    @property
    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.array)))

    def to_json_dict(self) -> dict:
        return {s: v for s, v in zip(self.states, self.values)}


@dataclass(frozen=True)
class DPSolution:
    """Solved pair (w, z) with the system defect and the step record."""

    w: BoundedFunctional
    z: BoundedFunctional
    residual: float
    iterations: int
    #: d_inf(w_k, w_{k+1}) per successive-approximation step, for traces
    step_history: Tuple[float, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "w": self.w.to_json_dict(),
            "z": self.z.to_json_dict(),
            "residual": self.residual,
            "iterations": self.iterations,
        }


# ---------------------------------------------------------------------------
# Sup-norm machinery
# ---------------------------------------------------------------------------


def _require_same_states(u: BoundedFunctional, v: BoundedFunctional) -> None:
    if u.states != v.states:
        raise StateSetMismatch(
            f"state sets differ: {u.states!r} vs {v.states!r}"
        )


def sup_norm_distance(u: BoundedFunctional, v: BoundedFunctional) -> float:
    """d_inf(u, v) = max over states of |u - v|."""
    _require_same_states(u, v)
    return float(np.max(np.abs(u.array - v.array)))


def sup_gap_bound(f1: BoundedFunctional, f2: BoundedFunctional) -> Tuple[float, float]:
    """Return (|sup f1 - sup f2|, sup|f1 - f2|).

    The left side never exceeds the right; callers assert it.  This is
    the elementary inequality that transfers the pointwise reward gap to
    the sup-norm gap of the one-step operator.
    """
    _require_same_states(f1, f2)
    lhs = abs(float(np.max(f1.array)) - float(np.max(f2.array)))
    rhs = float(np.max(np.abs(f1.array - f2.array)))
    return lhs, rhs


# ---------------------------------------------------------------------------
# Operators
# ---------------------------------------------------------------------------


def bellman_step(problem: DPProblem, v: BoundedFunctional) -> BoundedFunctional:
    """(T v)(a) = max_b { h(a,b) + F(a, b, v(G(a,b))) }."""
    if v.states != problem.states:
        raise StateSetMismatch("functional is not on the problem's state set")
    continuation = v.array[problem.g_array]
    scores = problem.h_array + problem.F.value_matrix(continuation)
    return BoundedFunctional.from_array(problem.states, scores.max(axis=1))


def coupled_output_bound(problem: DPProblem, w: BoundedFunctional) -> float:
    """A-priori bound on |T(T w)|: 2*sup|h| + sup|w| + 2 + 2*sup|F(.,.,1)|."""
    sup_h = float(np.max(np.abs(problem.h_array)))
    sup_f1 = float(np.max(np.abs(problem.F.value_matrix(1.0))))
    return 2.0 * sup_h + w.sup_norm + 2.0 + 2.0 * sup_f1


def _coupled_with_intermediate(
    problem: DPProblem, w: BoundedFunctional
) -> Tuple[BoundedFunctional, BoundedFunctional]:
    z = bellman_step(problem, w)
    ow = bellman_step(problem, z)
    bound = coupled_output_bound(problem, w)
    if ow.sup_norm > bound + 1e-9 * (1.0 + bound):
        raise BoundednessViolation(
            f"|O w| = {ow.sup_norm} exceeds the a-priori bound {bound}; "
            "provable for lipschitz_C <= 1, so inside that regime this is "
            "an implementation fault"
        )
    return z, ow


def coupled_step(problem: DPProblem, w: BoundedFunctional) -> BoundedFunctional:
    """One full round of the coupled system: O w = T (T w).

    Asserts the a-priori output bound (see
    :func:`coupled_output_bound`); the bound is provable whenever the
    Lipschitz constant is <= 1 and can fail mathematically beyond it.
    """
    return _coupled_with_intermediate(problem, w)[1]


# ---------------------------------------------------------------------------
# Hypothesis checkers
# ---------------------------------------------------------------------------


def check_lipschitz(
    problem: DPProblem,
    t_samples: Sequence[Tuple[float, float]] = DEFAULT_T_SAMPLES,
) -> ConditionReport:
    """Sample |F(a,b,t1) - F(a,b,t2)| <= lipschitz_C * |t1 - t2|.

    Violation records carry x = (state, decision) and y = (t1, t2).
    """
    if not t_samples:
        raise MalformedTable("need at least one sample pair")
    failures: List[PairViolation] = []
    checked = 0
    tol = 1e-12
    for t1, t2 in t_samples:
        gap = np.abs(problem.F.value_matrix(float(t1)) - problem.F.value_matrix(float(t2)))
        allowed = problem.lipschitz_C * abs(float(t1) - float(t2))
        checked += gap.size
        for a, b in zip(*np.nonzero(gap > allowed + tol)):
            failures.append(
                PairViolation(
                    (problem.states[a], problem.decisions[b]),
                    (float(t1), float(t2)),
                    float(gap[a, b]),
                    allowed,
                )
            )
    return _make_report("lipschitz", failures, checked)


def default_probe_pairs(
    problem: DPProblem, seed: int = 0
) -> List[Tuple[BoundedFunctional, BoundedFunctional]]:
    """Probe pool for the operator-contraction check: the constants
    {0, 1, -1, 100}, the pointwise max/min of h over decisions, and 8
    seeded random functionals with entries in [-10, 10]; all distinct
    pairs from the pool."""
    states = problem.states
    pool = [BoundedFunctional.constant(states, v) for v in (0.0, 1.0, -1.0, 100.0)]
    pool.append(BoundedFunctional.from_array(states, problem.h_array.max(axis=1)))
    pool.append(BoundedFunctional.from_array(states, problem.h_array.min(axis=1)))
    rng = np.random.default_rng(seed)
    for _ in range(8):
        pool.append(
            BoundedFunctional.from_array(states, rng.uniform(-10.0, 10.0, len(states)))
        )
    return list(itertools.combinations(pool, 2))


def check_operator_contraction(
    problem: DPProblem,
    phi: ScalarFn,
    c_min: float = 0.0,
    probe_pairs: Optional[Sequence[Tuple[BoundedFunctional, BoundedFunctional]]] = None,
    seed: int = 0,
) -> ConditionReport:
    """Probe d_inf(O w1, O w2) <= phi(M) + c_min * m over functional pairs.

    M and m are the comparison and minimum terms of the coincidence
    conditions instantiated with (A, B) = (O, T) under the sup-norm
    distance; by the sup-gap inequality the left side dominates the
    pointwise reward gap, so this is the checkable (partial: probes
    only) form of the hypothesis that makes the coincidence argument
    apply to the coupled operator.  Violations reference the probe
    pair's index in both witness fields.
    """
    if probe_pairs is None:
        probe_pairs = default_probe_pairs(problem, seed)
    if not probe_pairs:
        raise MalformedTable("need at least one probe pair")
    failures: List[PairViolation] = []
    for i, (w1, w2) in enumerate(probe_pairs):
        z1, o1 = _coupled_with_intermediate(problem, w1)
        z2, o2 = _coupled_with_intermediate(problem, w2)
        lhs = sup_norm_distance(o1, o2)
        d_zz = sup_norm_distance(z1, z2)
        d_11 = sup_norm_distance(z1, o1)
        d_22 = sup_norm_distance(z2, o2)
        m_big = max(
            d_zz,
            d_11 * (d_22 + 1.0) / (1.0 + d_zz),
            d_22 * (d_11 + 1.0) / (1.0 + d_zz),
        )
        m_small = min(
            d_11,
            d_22,
            sup_norm_distance(z1, o2),
            sup_norm_distance(z2, o1),
        )
        rhs = float(phi(m_big)) + float(c_min) * m_small
        if lhs > rhs + 1e-12:
            failures.append(PairViolation(i, i, lhs, rhs))
    return _make_report("operator", failures, len(probe_pairs))


# ---------------------------------------------------------------------------
# Solver: Jungck iteration on the function space
# ---------------------------------------------------------------------------


class _FunctionSpace:
    """Minimal space protocol over BoundedFunctionals (sup-norm)."""

    def __init__(self, states: Tuple[str, ...]):
        self.states = states

    def has_point(self, p) -> bool:
        return isinstance(p, BoundedFunctional) and p.states == self.states

    def require_point(self, p) -> BoundedFunctional:
        if not self.has_point(p):
            raise StateSetMismatch("functional is not on this state set")
        return p

    def normalize(self, p) -> BoundedFunctional:
        return self.require_point(p)

    def distance(self, p, q) -> float:
        return sup_norm_distance(p, q)

    measure = distance


class _FunctionOperator:
    """PointMap-alike wrapping an operator on functionals."""

    def __init__(self, fn):
        self._fn = fn

    def apply(self, space, w):
        return self._fn(w)


class _CoupledPair:
    """MappingPair-alike with A = O, B = T and a total selector.

    The selector must return some u with T u = z for each produced
    z = O w; since O = T∘T, the intermediate T w is exactly such a u, so
    A memoizes it per output value and the selector looks it up.
    """

    def __init__(self, problem: DPProblem):
        self._problem = problem
        self._preimage = {}
        self.A = _FunctionOperator(self._coupled)
        self.B = _FunctionOperator(lambda w: bellman_step(problem, w))

    def _coupled(self, w: BoundedFunctional) -> BoundedFunctional:
        tw, ow = _coupled_with_intermediate(self._problem, w)
        self._preimage[ow] = tw
        return ow

    def selector_for(self, space):
        def select(z):
            try:
                return self._preimage[z]
            except KeyError:
                raise SelectorFailure(
                    "no recorded one-step preimage for this functional"
                ) from None

        return select


def system_residual(problem: DPProblem, w: BoundedFunctional, z: BoundedFunctional) -> float:
    """Defect of (w, z) in the coupled system:
    max(d_inf(w, T z), d_inf(z, T w))."""
    return max(
        sup_norm_distance(w, bellman_step(problem, z)),
        sup_norm_distance(z, bellman_step(problem, w)),
    )


def solve_system(
    problem: DPProblem,
    tol: float = 1e-9,
    max_iter: int = 10_000,
    phi_certificate: Optional[ScalarFn] = None,
    probe_seed: int = 0,
    w0: Optional[BoundedFunctional] = None,
) -> DPSolution:
    """Solve the coupled system by Jungck iteration from w0 (default 0).

    Preconditions: the sampled Lipschitz check must hold, and either
    lipschitz_C < 1 (the checkable sufficient condition making T a
    sup-norm contraction) or an explicit ``phi_certificate`` that passes
    the operator-contraction probes.

    When lipschitz_C = c < 1 the loop stops at the certified threshold
    tol*(1 - c^2), which guarantees the returned w is within tol of the
    unique solution (restarts from any w0 then agree to 2*tol); the
    reported residual is in particular <= tol.  With only a certificate
    the stop threshold is tol itself.
    """
    lip = check_lipschitz(problem)
    if not lip.holds:
        raise HypothesisViolated(
            "declared lipschitz_C does not bound F's modulus", report=lip
        )
    c = problem.lipschitz_C
    if c < 1:
        threshold = tol * (1.0 - c * c)
    else:
        if phi_certificate is None:
            raise HypothesisViolated(
                "lipschitz_C >= 1: supply a phi_certificate to proceed"
            )
        probes = check_operator_contraction(
            problem, phi_certificate, 0.0, default_probe_pairs(problem, probe_seed)
        )
        if not probes.holds:
            raise HypothesisViolated(
                "phi certificate fails the operator-contraction probes",
                report=probes,
            )
        threshold = tol

    space = _FunctionSpace(problem.states)
    pair = _CoupledPair(problem)
    w = BoundedFunctional.constant(problem.states, 0.0) if w0 is None else space.require_point(w0)
    steps_used = 0
    step_tol = threshold / 4.0
    history: List[float] = []
    best: Optional[DPSolution] = None
    while steps_used < max_iter:
        trace = jungck_iterate(space, pair, w, tol=step_tol, max_iter=max_iter - steps_used)
        steps_used += trace.iterations
        history.extend(
            sup_norm_distance(trace.x[i], trace.x[i + 1])
            for i in range(len(trace.x) - 1)
        )
        candidate = trace.x[-1]
        # z_n = O x_n = x_{n+2}, so d(x_last, z_last) is the system defect
        # of the candidate without extra operator applications.
        defect = space.distance(candidate, trace.z[-1])
        if defect <= threshold:
            z = bellman_step(problem, candidate)
            solution = DPSolution(
                w=candidate,
                z=z,
                residual=system_residual(problem, candidate, z),
                iterations=steps_used,
                step_history=tuple(history),
            )
            return solution
        if trace.status == STATUS_MAX_ITER:
            z = bellman_step(problem, candidate)
            best = DPSolution(
                w=candidate,
                z=z,
                residual=system_residual(problem, candidate, z),
                iterations=steps_used,
                step_history=tuple(history),
            )
            break
        w = candidate
        step_tol /= 4.0
    raise NoConvergence(
        f"no solution within tolerance after {steps_used} iteration(s)",
        solution=best,
    )
