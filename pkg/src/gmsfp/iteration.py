"""Jungck coincidence iteration and fixed-point verification.

Given self-maps A, B with range(A) inside range(B), the orbit

    z_n = B x_{n+1} = A x_n

advances by applying A and then pulling the value back through a chosen
right-inverse of B.  Under any of the contraction conditions in
:mod:`gmsfp.contractions` the z-sequence is Cauchy and its limit z is
the unique point of coincidence (z = Au = Bu for u in B's preimage); if
A and B additionally commute at coincidence points (weak compatibility),
z is their unique common fixed point.

The engine records the full orbit with step distances d(z_n, z_{n+1})
and skip distances d(z_n, z_{n+2}) so both decay claims underlying the
convergence argument are observable, and it detects the failure modes a
finite run can actually exhibit (value cycles, budget exhaustion, a
selector hole).  Uniqueness claims are only ever certified by the
exhaustive scan :func:`bruteforce_coincidences`, never by the iteration
itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from ._numeric import Scalar, leq
from .contractions import (
    ConditionReport,
    ControlFunctions,
    MappingPair,
    check_linear_contraction,
    check_rational_contraction,
    check_weighted_contraction,
)
from .errors import HypothesisViolated, MalformedTable, NoConvergence, SelectorFailure
from .gms_core import FiniteGMS, Point, SampledIntervalSpace

#: Exhaustive coincidence scans run up to this many points.
BRUTEFORCE_POINT_CAP = 4_000_000

STATUS_CONVERGED = "converged"
STATUS_COINCIDENCE_EARLY = "coincidence_found_early"
STATUS_MAX_ITER = "max_iter"
STATUS_CYCLE = "cycle_detected"
STATUS_SELECTOR_FAILURE = "selector_failure"


@dataclass(frozen=True)
class IterationTrace:
    """The recorded orbit.

    ``z[n] = A(x[n])`` exactly as recorded, and ``B(x[n+1]) = z[n]`` by
    the selector property.  ``status`` is one of the STATUS_* constants;
    coincidence_found_early implies the last two z entries are equal.
    """

    x: Tuple[Point, ...]
    z: Tuple[Point, ...]
    step_dist: Tuple[Scalar, ...]
    skip_dist: Tuple[Scalar, ...]
    status: str

    @property
    def iterations(self) -> int:
        return len(self.z) - 1

    @property
    def final(self) -> Point:
        return self.z[-1]


@dataclass(frozen=True)
class CoincidenceResult:
    """A verified point of coincidence.

    ``value = A(point) = B(point)`` within the run's tolerance;
    ``unique_within_space`` is None when the space is too large for the
    exhaustive scan (the only honest uniqueness oracle here).
    """

    point: Point
    value: Point
    is_common_fixed_point: bool
    unique_within_space: Optional[bool]
    trace: IterationTrace


def _trace_from(space, xs: List[Point], zs: List[Point], status: str) -> IterationTrace:
    steps = tuple(space.distance(zs[i], zs[i + 1]) for i in range(len(zs) - 1))
    skips = tuple(space.distance(zs[i], zs[i + 2]) for i in range(len(zs) - 2))
    return IterationTrace(tuple(xs), tuple(zs), steps, skips, status)


def jungck_iterate(
    space,
    pair: MappingPair,
    x0: Point,
    tol: Scalar = 1e-9,
    max_iter: int = 100_000,
) -> IterationTrace:
    """Run the orbit z_n = B x_{n+1} = A x_n from x0.

    Termination, checked in order at each step: exact value repetition
    z_n == z_{n+1} (coincidence_found_early), step distance below tol
    (converged), a recurring z-value at step distance >= tol
    (cycle_detected — the contraction hypotheses exclude this, so it
    diagnoses their violation), or the iteration budget (max_iter).

    On sampled interval spaces map outputs are snapped to the grid so
    the orbit stays inside the finite point set; tol below half the grid
    pitch then only terminates through exact repetition.  A selector
    hole raises :class:`SelectorFailure` carrying the partial trace
    (status selector_failure).
    """
    if max_iter < 1:
        raise MalformedTable("max_iter must be >= 1")
    if tol < 0:
        raise MalformedTable("tol must be >= 0")
    space.require_point(x0)
    selector = pair.selector_for(space)

    xs: List[Point] = [x0]
    zs: List[Point] = [space.normalize(pair.A.apply(space, x0))]
    first_seen = {zs[0]: 0}
    status = STATUS_MAX_ITER
    for _ in range(max_iter):
        try:
            x_next = selector(zs[-1])
        except SelectorFailure as exc:
            raise SelectorFailure(
                str(exc), trace=_trace_from(space, xs, zs, STATUS_SELECTOR_FAILURE)
            ) from None
        xs.append(x_next)
        z_next = space.normalize(pair.A.apply(space, x_next))
        zs.append(z_next)
        step = space.distance(zs[-2], z_next)
        if zs[-2] == z_next:
            status = STATUS_COINCIDENCE_EARLY
            break
        if step < tol:
            status = STATUS_CONVERGED
            break
        if z_next in first_seen:
            status = STATUS_CYCLE
            break
        first_seen[z_next] = len(zs) - 1
    return _trace_from(space, xs, zs, status)


_CHECKERS = {
    "rational": check_rational_contraction,
    "linear": check_linear_contraction,
    "weighted": check_weighted_contraction,
}


def run_condition_checker(
    condition: str, space, pair, ctrl, **kwargs
) -> ConditionReport:
    """Dispatch one of the three pairwise condition checkers by id
    ('rational'/'linear'/'weighted'; numeric CLI aliases are resolved
    before this point)."""
    try:
        checker = _CHECKERS[condition]
    except KeyError:
        raise MalformedTable(f"unknown condition id {condition!r}") from None
    return checker(space, pair, ctrl, **kwargs)


def bruteforce_coincidences(space, pair: MappingPair, tol: Scalar = 1e-9) -> List[Point]:
    """Every x with d(Ax, Bx) <= tol, in point-index order.

    Independent oracle for uniqueness claims: a plain exhaustive scan,
    vectorized on sampled grids (with map outputs snapped, matching the
    iteration's semantics) and a direct loop on finite spaces.
    """
    if space.point_count > BRUTEFORCE_POINT_CAP:
        raise MalformedTable(
            f"space has {space.point_count} points; scan cap is {BRUTEFORCE_POINT_CAP}"
        )
    if isinstance(space, SampledIntervalSpace):
        values = space.grid_values()
        a_vals = space.snap_array(pair.A.apply_array(space, values))
        b_vals = space.snap_array(pair.B.apply_array(space, values))
        hits = np.nonzero(np.abs(a_vals - b_vals) <= float(tol))[0]
        return [float(values[i]) for i in hits]
    out = []
    for p in space.iter_points():
        ap = space.normalize(pair.A.apply(space, p))
        bp = space.normalize(pair.B.apply(space, p))
        if leq(space.distance(ap, bp), tol):
            out.append(p)
    return out


@dataclass(frozen=True)
class WeakCompatibilityCheck:
    """Falsy when some coincidence point has A(Bx) != B(Ax)."""

    compatible: bool
    witnesses: Tuple[Point, ...]

    def __bool__(self) -> bool:
        return self.compatible


def check_weak_compatibility(space, pair: MappingPair, tol: Scalar = 1e-9) -> WeakCompatibilityCheck:
    """A and B are weakly compatible when they commute at every
    coincidence point: d(Ax, Bx) <= tol implies d(ABx, BAx) <= tol."""
    witnesses = []
    for p in bruteforce_coincidences(space, pair, tol):
        ap = space.normalize(pair.A.apply(space, p))
        bp = space.normalize(pair.B.apply(space, p))
        abx = space.normalize(pair.A.apply(space, bp))
        bax = space.normalize(pair.B.apply(space, ap))
        if not leq(space.distance(abx, bax), tol):
            witnesses.append(p)
    return WeakCompatibilityCheck(not witnesses, tuple(witnesses))


def find_coincidence(
    space,
    pair: MappingPair,
    ctrl: Optional[ControlFunctions],
    x0: Point,
    tol: Scalar = 1e-9,
    max_iter: int = 100_000,
    condition: str = "rational",
    override: bool = False,
    checker_kwargs: Optional[dict] = None,
) -> CoincidenceResult:
    """Iterate to the point of coincidence and verify the claims.

    The configured condition checker must report holds first (bypass
    with ``override=True`` at your own risk); then the orbit is run, the
    limit z is pulled back through the selector to u, d(Au, Bu) <= tol
    is asserted, uniqueness of the coincidence value is certified by the
    exhaustive scan when the space is small enough, and the common-
    fixed-point claim is decided by weak compatibility plus
    d(Az, z), d(Bz, z) <= tol.
    """
    if not override:
        if ctrl is None:
            raise HypothesisViolated("control functions required unless override=True")
        report = run_condition_checker(condition, space, pair, ctrl, **(checker_kwargs or {}))
        if not report.holds:
            raise HypothesisViolated(
                f"condition '{report.condition}' is violated on "
                f"{report.violation_count} pair(s)",
                report=report,
            )

    trace = jungck_iterate(space, pair, x0, tol, max_iter)
    if trace.status in (STATUS_MAX_ITER, STATUS_CYCLE):
        raise NoConvergence(
            f"iteration ended with status {trace.status!r} after "
            f"{trace.iterations} step(s)",
            trace=trace,
        )

    selector = pair.selector_for(space)
    z = trace.final
    u = selector(z)
    au = space.normalize(pair.A.apply(space, u))
    bu = space.normalize(pair.B.apply(space, u))
    if not leq(space.distance(au, bu), tol):
        raise NoConvergence(
            "limit failed the coincidence check: d(Au, Bu) = "
            f"{space.distance(au, bu)!r} > tol",
            trace=trace,
        )
    value = bu

    unique: Optional[bool] = None
    if space.point_count <= BRUTEFORCE_POINT_CAP:
        unique = True
        for other in bruteforce_coincidences(space, pair, tol):
            other_value = space.normalize(pair.A.apply(space, other))
            if not leq(space.distance(other_value, value), tol):
                unique = False
                break

    common = False
    if check_weak_compatibility(space, pair, tol):
        az = space.normalize(pair.A.apply(space, value))
        bz = space.normalize(pair.B.apply(space, value))
        common = leq(space.distance(az, value), tol) and leq(space.distance(bz, value), tol)

    return CoincidenceResult(
        point=u,
        value=value,
        is_common_fixed_point=common,
        unique_within_space=unique,
        trace=trace,
    )
