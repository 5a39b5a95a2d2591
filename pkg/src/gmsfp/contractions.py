"""Rational-type contraction conditions for a pair of self-maps (A, B).

The comparison term for a pair of points is

    M(x, y) = max{ d(Bx,By),
                   d(Bx,Ax)*(d(By,Ay)+1) / (1+d(Bx,By)),
                   d(By,Ay)*(d(Bx,Ax)+1) / (1+d(Bx,By)) }

and the auxiliary minimum is

    min{ d(Bx,Ax), d(By,Ay), d(Bx,Ay), d(By,Ax) }.

Three contraction conditions are checked pairwise over a space:

* rational:  d(Ax,Ay) <= phi(M(x,y)) + C * min-term,
  with phi nondecreasing, phi(t)=0 iff t=0 and phi(t) < t for t > 0;
* linear:    d(Ax,Ay) <= a1*d(Bx,By) + a2*q1 + a3*q2 + L * min-term,
  where q1, q2 are the two rational quotients above and a1+a2+a3 < 1
  (a specialization of the rational condition with phi(t) = (a1+a2+a3)*t
  and C = L);
* weighted:  phi(beta(Bx,By)*d(Ax,Ay)) <= phi(M(x,y)) - psi(M(x,y)),
  with psi(t)=0 iff t=0 and a pairwise weight beta.

Each checker scans every ordered pair on a finite space (exact rational
arithmetic when the table is rational) or the grid pairs of a sampled
interval space (vectorized; seeded random pairs above a size cap), and
returns a :class:`ConditionReport` whose violations are data, not
exceptions.  Admissibility and orbit-regularity predicates for the
weight beta live here too.

Maps and control functions come from small declarative catalogs so every
instance is JSON-describable and numerically evaluable; user code is
never executed from problem files.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from ._numeric import FLOAT_TOL, Scalar, leq, parse_scalar, scalar_to_json
from .errors import (
    CoefficientError,
    HypothesisViolated,
    MalformedTable,
    SelectorFailure,
    UnknownPoint,
)
from .gms_core import (
    FiniteGMS,
    Point,
    SampledIntervalSpace,
    SequenceRecord,
    default_burn_in,
)

#: Pair scans above this many ordered pairs switch to random sampling.
PAIR_SCAN_CAP = 2_000_000

#: Default sampled ordered pairs on huge grids.
DEFAULT_SAMPLE_PAIRS = 1_000_000

#: Cap on violation records retained in a report (the count stays exact).
MAX_RECORDED_VIOLATIONS = 10_000


# ---------------------------------------------------------------------------
# Point-map catalog
# ---------------------------------------------------------------------------


class PointMap:
    """A self-map of a space.

    ``apply`` evaluates the declared rule exactly (no grid snapping);
    condition checkers use these raw values.  The iteration engine snaps
    outputs back onto sampled grids via ``space.normalize``.
    """

    def apply(self, space, p: Point):
        raise NotImplementedError

    def apply_array(self, space, xs: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def to_json_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class TableMap(PointMap):
    """Explicit point -> point table for finite spaces."""

    table: Tuple[Tuple[Point, Point], ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(tuple(e) for e in self.table))
        object.__setattr__(self, "_mapping", dict(self.table))

    @classmethod
    def from_dict(cls, mapping: Dict[Point, Point]) -> "TableMap":
        return cls(tuple(mapping.items()))

    @property
    def mapping(self) -> Dict[Point, Point]:
        return dict(self._mapping)

    def apply(self, space, p: Point):
        space.require_point(p)
        try:
            return self._mapping[p]
        except KeyError as exc:
            raise UnknownPoint(f"map table undefined at {p!r}") from exc

    def to_json_dict(self) -> dict:
        return {"table": {str(k): v for k, v in self.table}}


@dataclass(frozen=True)
class IdentityMap(PointMap):
    def apply(self, space, p: Point):
        return space.require_point(p)

    def apply_array(self, space, xs: np.ndarray) -> np.ndarray:
        return xs

    def to_json_dict(self) -> dict:
        return {"kind": "identity"}


@dataclass(frozen=True)
class HalvingMap(PointMap):
    """x -> x/2 on a sampled interval space."""

    def apply(self, space, p):
        return space.require_point(p) / 2.0

    def apply_array(self, space, xs: np.ndarray) -> np.ndarray:
        return xs / 2.0

    def to_json_dict(self) -> dict:
        return {"kind": "halving"}


@dataclass(frozen=True)
class ConstantMap(PointMap):
    point: Point

    def apply(self, space, p):
        space.require_point(p)
        return self.point

    def apply_array(self, space, xs: np.ndarray) -> np.ndarray:
        return np.full_like(xs, float(self.point))

    def to_json_dict(self) -> dict:
        return {"kind": "constant", "point": self.point}


@dataclass(frozen=True)
class AffineMap(PointMap):
    """x -> a*x + b, clipped into the interval so it stays a self-map."""

    a: float
    b: float

    def apply(self, space, p):
        v = self.a * space.require_point(p) + self.b
        return min(max(v, space.lower), space.upper)

    def apply_array(self, space, xs: np.ndarray) -> np.ndarray:
        return np.clip(self.a * xs + self.b, space.lower, space.upper)

    def to_json_dict(self) -> dict:
        return {"kind": "affine", "a": self.a, "b": self.b}


def map_from_json_dict(obj: dict) -> PointMap:
    if not isinstance(obj, dict):
        raise MalformedTable("map description must be a JSON object")
    if "table" in obj:
        return TableMap.from_dict(dict(obj["table"]))
    kind = obj.get("kind")
    if kind == "identity":
        return IdentityMap()
    if kind == "halving":
        return HalvingMap()
    if kind == "constant":
        return ConstantMap(obj["point"])
    if kind == "affine":
        return AffineMap(float(obj["a"]), float(obj["b"]))
    raise MalformedTable(f"unknown map kind {kind!r}")


# ---------------------------------------------------------------------------
# Mapping pair with a chosen right-inverse of B
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MappingPair:
    """The two self-maps (A, B) plus an optional explicit selector.

    The selector is a partial map from range(B) back to domain points
    with B(selector(y)) = y; it realizes the step "pick u with Bu = z"
    of the coincidence iteration.  When B is an explicit injective table
    (or an analytically invertible catalog map) the selector is derived
    automatically; otherwise it must be supplied.
    """

    A: PointMap
    B: PointMap
    b_selector: Optional[PointMap] = None

    def selector_for(self, space) -> Callable[[Point], Point]:
        if self.b_selector is not None:
            explicit = self.b_selector
            B = self.B

            def from_explicit(y: Point) -> Point:
                u = space.normalize(explicit.apply(space, y))
                bu = B.apply(space, u)
                ok = (bu == y) if isinstance(space, FiniteGMS) else (
                    abs(float(bu) - float(y)) <= FLOAT_TOL
                )
                if not ok:
                    raise SelectorFailure(
                        f"explicit selector is not a right-inverse at {y!r}"
                    )
                return u

            return from_explicit

        if isinstance(self.B, TableMap):
            inverse: Dict[Point, Point] = {}
            collisions = set()
            for src, dst in self.B.table:
                if dst in inverse:
                    collisions.add(dst)
                inverse[dst] = src
            if collisions:
                raise SelectorFailure(
                    "B is not injective; supply an explicit b_selector "
                    f"(colliding values: {sorted(map(str, collisions))})"
                )

            def from_table(y: Point) -> Point:
                try:
                    return inverse[y]
                except KeyError as exc:
                    raise SelectorFailure(f"value {y!r} is outside range(B)") from exc

            return from_table

        if isinstance(self.B, IdentityMap):
            return lambda y: space.require_point(y)

        if isinstance(self.B, HalvingMap):

            def unhalve(y: Point) -> Point:
                u = 2.0 * float(y)
                if not (space.lower - FLOAT_TOL <= u <= space.upper + FLOAT_TOL):
                    raise SelectorFailure(f"value {y!r} is outside range(B)")
                return space.normalize(u)

            return unhalve

        if isinstance(self.B, AffineMap) and self.B.a != 0:
            B = self.B

            def unaffine(y: Point) -> Point:
                u = (float(y) - B.b) / B.a
                if not (space.lower - FLOAT_TOL <= u <= space.upper + FLOAT_TOL):
                    raise SelectorFailure(f"value {y!r} is outside range(B)")
                return space.normalize(u)

            return unaffine

        if isinstance(self.B, ConstantMap):
            c = self.B.point

            def unconstant(y: Point) -> Point:
                if space.distance(y, c) > FLOAT_TOL:
                    raise SelectorFailure(f"value {y!r} is outside range(B) = {{{c!r}}}")
                return space.require_point(c)

            return unconstant

        raise SelectorFailure("cannot derive a selector for this B; supply b_selector")

    def verify_range_inclusion(self, space) -> bool:
        """Exhaustively confirm range(A) subset-of range(B) on finite
        spaces.  On sampled spaces the hypothesis is enforced at runtime
        through SelectorFailure instead."""
        if not isinstance(space, FiniteGMS):
            return True
        a_range = {self.A.apply(space, p) for p in space.iter_points()}
        b_range = {self.B.apply(space, p) for p in space.iter_points()}
        return a_range <= b_range

    def to_json_dict(self) -> dict:
        out = {"A": self.A.to_json_dict(), "B": self.B.to_json_dict()}
        if self.b_selector is not None:
            out["b_selector"] = self.b_selector.to_json_dict()
        return out


# ---------------------------------------------------------------------------
# Control-function catalog
# ---------------------------------------------------------------------------


class ScalarFn:
    """A catalog scalar function on [0, inf); exact on rational inputs
    whenever its parameters are rational."""

    def __call__(self, t: Scalar) -> Scalar:
        raise NotImplementedError

    def apply_array(self, ts: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def to_json_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class ScaleFn(ScalarFn):
    """t -> k*t."""

    k: Scalar

    def __call__(self, t):
        return self.k * t

    def apply_array(self, ts):
        return float(self.k) * ts

    def to_json_dict(self):
        return {"kind": "scale", "k": scalar_to_json(self.k)}


@dataclass(frozen=True)
class SaturatingFn(ScalarFn):
    """t -> t / (1 + t); nondecreasing, below the identity for t > 0."""

    def __call__(self, t):
        return t / (1 + t)

    def apply_array(self, ts):
        return ts / (1.0 + ts)

    def to_json_dict(self):
        return {"kind": "saturating"}


@dataclass(frozen=True)
class CappedFn(ScalarFn):
    """t -> min(k*t, cap)."""

    k: Scalar
    cap: Scalar

    def __call__(self, t):
        return min(self.k * t, self.cap)

    def apply_array(self, ts):
        return np.minimum(float(self.k) * ts, float(self.cap))

    def to_json_dict(self):
        return {"kind": "capped", "k": scalar_to_json(self.k), "cap": scalar_to_json(self.cap)}


@dataclass(frozen=True)
class TableFn(ScalarFn):
    """Monotone lookup table with linear interpolation, clamped at the
    last knot; knots must start at (0, 0) and be nondecreasing."""

    knots: Tuple[Tuple[Scalar, Scalar], ...]

    def __post_init__(self):
        knots = tuple(
            (parse_scalar(t), parse_scalar(v)) for t, v in self.knots
        )
        if len(knots) < 2:
            raise MalformedTable("lookup table needs at least two knots")
        if knots[0][0] != 0 or knots[0][1] != 0:
            raise MalformedTable("lookup table must start at (0, 0)")
        for (t0, v0), (t1, v1) in zip(knots, knots[1:]):
            if t1 <= t0:
                raise MalformedTable("lookup abscissae must strictly increase")
            if v1 < v0:
                raise MalformedTable("lookup table must be nondecreasing")
        object.__setattr__(self, "knots", knots)

    def __call__(self, t):
        knots = self.knots
        if t >= knots[-1][0]:
            return knots[-1][1]
        for (t0, v0), (t1, v1) in zip(knots, knots[1:]):
            if t <= t1:
                return v0 + (v1 - v0) * (t - t0) / (t1 - t0)
        return knots[-1][1]  # pragma: no cover - unreachable

    def apply_array(self, ts):
        xs = np.array([float(t) for t, _ in self.knots])
        ys = np.array([float(v) for _, v in self.knots])
        return np.interp(ts, xs, ys)

    def to_json_dict(self):
        return {
            "kind": "table",
            "knots": [[scalar_to_json(t), scalar_to_json(v)] for t, v in self.knots],
        }


def scalar_fn_from_json_dict(obj: dict) -> ScalarFn:
    if not isinstance(obj, dict):
        raise MalformedTable("control function must be a JSON object")
    kind = obj.get("kind")
    if kind == "scale":
        return ScaleFn(parse_scalar(obj["k"]))
    if kind == "saturating":
        return SaturatingFn()
    if kind == "capped":
        return CappedFn(parse_scalar(obj["k"]), parse_scalar(obj["cap"]))
    if kind == "table":
        return TableFn(tuple((t, v) for t, v in obj["knots"]))
    raise MalformedTable(f"unknown control-function kind {kind!r}")


#: Log-spaced sample grid on which the numeric function-class checks run.
PHI_SAMPLE_GRID: Tuple[float, ...] = tuple(
    float(x) for x in np.logspace(-9, 3, 64)
)


def is_nondecreasing(fn: ScalarFn, grid: Sequence[float] = PHI_SAMPLE_GRID) -> bool:
    values = [fn(t) for t in grid]
    return all(leq(a, b) for a, b in zip(values, values[1:]))


def vanishes_only_at_zero(fn: ScalarFn, grid: Sequence[float] = PHI_SAMPLE_GRID) -> bool:
    if not leq(fn(0), 0) or not leq(0, fn(0)):
        return False
    return all(not leq(fn(t), 0) for t in grid)


def strictly_below_identity(fn: ScalarFn, grid: Sequence[float] = PHI_SAMPLE_GRID) -> bool:
    return all(fn(t) < t for t in grid)


def require_phi_basic(phi: ScalarFn) -> None:
    """phi admissible for the weighted condition: nondecreasing with
    phi(t) = 0 iff t = 0 (checked on the sample grid)."""
    if phi is None:
        raise HypothesisViolated("a phi control function is required")
    if not is_nondecreasing(phi):
        raise HypothesisViolated("phi must be nondecreasing")
    if not vanishes_only_at_zero(phi):
        raise HypothesisViolated("phi must vanish exactly at 0")


def require_phi_contractive(phi: ScalarFn) -> None:
    """phi admissible for the rational condition: additionally
    phi(t) < t on the sample grid."""
    require_phi_basic(phi)
    if not strictly_below_identity(phi):
        raise HypothesisViolated("phi(t) < t must hold for t > 0")


def require_psi(psi: ScalarFn) -> None:
    if psi is None:
        raise HypothesisViolated("a psi control function is required")
    if not vanishes_only_at_zero(psi):
        raise HypothesisViolated("psi must vanish exactly at 0")


# ---------------------------------------------------------------------------
# Pairwise weights (beta)
# ---------------------------------------------------------------------------


class PairWeight:
    """Nonnegative weight on ordered point pairs."""

    def weight(self, space, p: Point, q: Point) -> Scalar:
        raise NotImplementedError

    def weight_arrays(self, space, ps: np.ndarray, qs: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def to_json_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class ConstWeight(PairWeight):
    value: Scalar

    def weight(self, space, p, q):
        return self.value

    def weight_arrays(self, space, ps, qs):
        return np.full(ps.shape, float(self.value))

    def to_json_dict(self):
        return {"kind": "const", "value": scalar_to_json(self.value)}


@dataclass(frozen=True)
class ThresholdWeight(PairWeight):
    """beta(p, q) = hi when p >= q else lo (numeric points)."""

    hi: Scalar
    lo: Scalar

    def weight(self, space, p, q):
        return self.hi if p >= q else self.lo

    def weight_arrays(self, space, ps, qs):
        return np.where(ps >= qs, float(self.hi), float(self.lo))

    def to_json_dict(self):
        return {"kind": "threshold", "hi": scalar_to_json(self.hi), "lo": scalar_to_json(self.lo)}


@dataclass(frozen=True)
class TableWeight(PairWeight):
    """Dense pair table for finite spaces, with a default fill value."""

    pairs: Tuple[Tuple[Point, Point, Scalar], ...]
    default: Scalar = Fraction(1)

    def __post_init__(self):
        pairs = tuple((p, q, parse_scalar(v)) for p, q, v in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "_lookup", {(p, q): v for p, q, v in pairs})

    def weight(self, space, p, q):
        return self._lookup.get((p, q), self.default)

    def to_json_dict(self):
        return {
            "kind": "table",
            "pairs": [[p, q, scalar_to_json(v)] for p, q, v in self.pairs],
            "default": scalar_to_json(self.default),
        }


def weight_from_json_dict(obj: dict) -> PairWeight:
    if not isinstance(obj, dict):
        raise MalformedTable("beta description must be a JSON object")
    kind = obj.get("kind")
    if kind == "const":
        return ConstWeight(parse_scalar(obj["value"]))
    if kind == "threshold":
        return ThresholdWeight(parse_scalar(obj["hi"]), parse_scalar(obj["lo"]))
    if kind == "table":
        return TableWeight(
            tuple((p, q, v) for p, q, v in obj["pairs"]),
            parse_scalar(obj.get("default", 1)),
        )
    raise MalformedTable(f"unknown beta kind {kind!r}")


# ---------------------------------------------------------------------------
# Control-function bundle
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ControlFunctions:
    """phi/psi/beta plus the constants used by the three conditions.

    Only the pieces a given checker needs must be present; e.g. the
    linear condition ignores phi/psi and reads (a1, a2, a3, L).
    """

    phi: Optional[ScalarFn] = None
    psi: Optional[ScalarFn] = None
    beta: Optional[PairWeight] = None
    C: Scalar = Fraction(0)
    L: Scalar = Fraction(0)
    a1: Scalar = Fraction(0)
    a2: Scalar = Fraction(0)
    a3: Scalar = Fraction(0)

    def __post_init__(self):
        for name in ("C", "L", "a1", "a2", "a3"):
            value = parse_scalar(getattr(self, name))
            if value < 0:
                raise CoefficientError(f"{name} must be nonnegative")
            object.__setattr__(self, name, value)

    def to_json_dict(self) -> dict:
        out = {
            "C": scalar_to_json(self.C),
            "L": scalar_to_json(self.L),
            "a1": scalar_to_json(self.a1),
            "a2": scalar_to_json(self.a2),
            "a3": scalar_to_json(self.a3),
        }
        if self.phi is not None:
            out["phi"] = self.phi.to_json_dict()
        if self.psi is not None:
            out["psi"] = self.psi.to_json_dict()
        if self.beta is not None:
            out["beta"] = self.beta.to_json_dict()
        return out


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PairViolation:
    """One ordered pair failing its asserted inequality lhs <= rhs."""

    x: Point
    y: Point
    lhs: Scalar
    rhs: Scalar

    @property
    def slack(self) -> Scalar:
        return self.rhs - self.lhs

    def to_json_dict(self) -> dict:
        return {
            "x": self.x,
            "y": self.y,
            "lhs": scalar_to_json(self.lhs),
            "rhs": scalar_to_json(self.rhs),
            "slack": scalar_to_json(self.slack),
        }


@dataclass(frozen=True)
class ConditionReport:
    """Verdict of a pairwise condition scan.

    ``holds`` is true iff no violations were found; recorded violations
    are ordered by point index and capped at MAX_RECORDED_VIOLATIONS
    while ``violation_count`` stays exact.
    """

    condition: str
    holds: bool
    violations: Tuple[PairViolation, ...]
    pairs_checked: int
    violation_count: int
    sampled: bool = False

    def __bool__(self) -> bool:
        return self.holds

    def to_json_dict(self) -> dict:
        return {
            "condition": self.condition,
            "holds": self.holds,
            "violations": [v.to_json_dict() for v in self.violations],
            "pairs_checked": self.pairs_checked,
            "violation_count": self.violation_count,
            "sampled": self.sampled,
        }


def _make_report(condition, failures, pairs_checked, sampled=False, violation_count=None) -> ConditionReport:
    count = len(failures) if violation_count is None else violation_count
    return ConditionReport(
        condition=condition,
        holds=count == 0,
        violations=tuple(failures[:MAX_RECORDED_VIOLATIONS]),
        pairs_checked=pairs_checked,
        violation_count=count,
        sampled=sampled,
    )


# ---------------------------------------------------------------------------
# Comparison terms
# ---------------------------------------------------------------------------


def comparison_term_parts(x: Point, y: Point, pair: MappingPair, space) -> Tuple[Scalar, Scalar, Scalar]:
    """The three candidate terms of M(x, y), in order: the image
    distance d(Bx,By) and the two rational quotients.  Map outputs are
    the raw catalog values (unsnapped on sampled spaces)."""
    ax, ay = pair.A.apply(space, x), pair.A.apply(space, y)
    bx, by = pair.B.apply(space, x), pair.B.apply(space, y)
    d_bxy = space.measure(bx, by)
    d_xx = space.measure(bx, ax)
    d_yy = space.measure(by, ay)
    return (
        d_bxy,
        d_xx * (d_yy + 1) / (1 + d_bxy),
        d_yy * (d_xx + 1) / (1 + d_bxy),
    )


def compute_comparison_term(x: Point, y: Point, pair: MappingPair, space) -> Scalar:
    """M(x, y): the max of the three comparison terms."""
    return max(comparison_term_parts(x, y, pair, space))


def compute_min_term(x: Point, y: Point, pair: MappingPair, space) -> Scalar:
    """min{d(Bx,Ax), d(By,Ay), d(Bx,Ay), d(By,Ax)}; zero whenever x or y
    is a coincidence point of (A, B)."""
    ax, ay = pair.A.apply(space, x), pair.A.apply(space, y)
    bx, by = pair.B.apply(space, x), pair.B.apply(space, y)
    return min(
        space.measure(bx, ax),
        space.measure(by, ay),
        space.measure(bx, ay),
        space.measure(by, ax),
    )


# ---------------------------------------------------------------------------
# Pair enumeration (shared by the three condition checkers)
# ---------------------------------------------------------------------------


def _scan_pairs_scalar(space, evaluate, sample_pairs, seed):
    """Yield (x, y, lhs, rhs) via the scalar path, exhaustively when the
    ordered-pair count fits the cap, else seeded random sampling."""
    n = space.point_count
    points = list(space.iter_points())
    failures = []
    if n * n <= PAIR_SCAN_CAP:
        pairs = itertools.product(points, points)
        checked = n * n
        sampled = False
    else:
        rng = random.Random(seed)
        pairs = (
            (points[rng.randrange(n)], points[rng.randrange(n)])
            for _ in range(sample_pairs)
        )
        checked = sample_pairs
        sampled = True
    for x, y in pairs:
        lhs, rhs = evaluate(x, y)
        if not leq(lhs, rhs):
            failures.append(PairViolation(x, y, lhs, rhs))
    return failures, checked, sampled


def _grid_pair_arrays(space: SampledIntervalSpace, sample_pairs: int, seed: int):
    n = space.grid_count
    if n * n <= PAIR_SCAN_CAP:
        values = space.grid_values()
        xs = np.repeat(values, n)
        ys = np.tile(values, n)
        return xs, ys, False
    rng = np.random.default_rng(seed)
    ki = rng.integers(0, n, size=sample_pairs)
    kj = rng.integers(0, n, size=sample_pairs)
    return space.lower + ki * space.pitch, space.lower + kj * space.pitch, True


def _vector_terms(space, pair, xs, ys):
    ax, ay = pair.A.apply_array(space, xs), pair.A.apply_array(space, ys)
    bx, by = pair.B.apply_array(space, xs), pair.B.apply_array(space, ys)
    d_bxy = np.abs(bx - by)
    d_xx = np.abs(bx - ax)
    d_yy = np.abs(by - ay)
    m = np.maximum(
        d_bxy,
        np.maximum(
            d_xx * (d_yy + 1.0) / (1.0 + d_bxy),
            d_yy * (d_xx + 1.0) / (1.0 + d_bxy),
        ),
    )
    min_term = np.minimum(
        np.minimum(d_xx, d_yy),
        np.minimum(np.abs(bx - ay), np.abs(by - ax)),
    )
    d_axy = np.abs(ax - ay)
    return d_axy, m, min_term, d_bxy, d_xx, d_yy, bx, by


def _collect_vector_failures(xs, ys, lhs, rhs):
    """Violating pairs plus the exact count; at most
    MAX_RECORDED_VIOLATIONS records are materialized (the first hits in
    scan order, then sorted by point value for stable presentation)."""
    bad = np.nonzero(lhs > rhs + FLOAT_TOL)[0]
    head = bad[:MAX_RECORDED_VIOLATIONS]
    failures = [
        PairViolation(float(xs[i]), float(ys[i]), float(lhs[i]), float(rhs[i]))
        for i in head
    ]
    failures.sort(key=lambda v: (v.x, v.y))
    return failures, int(bad.size)


# ---------------------------------------------------------------------------
# Condition checkers
# ---------------------------------------------------------------------------


def check_rational_contraction(
    space,
    pair: MappingPair,
    ctrl: ControlFunctions,
    sample_pairs: int = DEFAULT_SAMPLE_PAIRS,
    seed: int = 0,
) -> ConditionReport:
    """d(Ax,Ay) <= phi(M(x,y)) + C * min-term over all ordered pairs.

    Raises HypothesisViolated when phi is outside its admissible class
    (that is a misconfiguration, not a condition violation).
    """
    require_phi_contractive(ctrl.phi)
    if isinstance(space, SampledIntervalSpace):
        xs, ys, sampled = _grid_pair_arrays(space, sample_pairs, seed)
        d_axy, m, min_term, *_ = _vector_terms(space, pair, xs, ys)
        rhs = ctrl.phi.apply_array(m) + float(ctrl.C) * min_term
        failures, count = _collect_vector_failures(xs, ys, d_axy, rhs)
        return _make_report("rational", failures, len(xs), sampled, count)

    def evaluate(x, y):
        lhs = space.measure(pair.A.apply(space, x), pair.A.apply(space, y))
        rhs = ctrl.phi(compute_comparison_term(x, y, pair, space)) + ctrl.C * compute_min_term(x, y, pair, space)
        return lhs, rhs

    failures, checked, sampled = _scan_pairs_scalar(space, evaluate, sample_pairs, seed)
    return _make_report("rational", failures, checked, sampled)


def check_linear_contraction(
    space,
    pair: MappingPair,
    ctrl: ControlFunctions,
    sample_pairs: int = DEFAULT_SAMPLE_PAIRS,
    seed: int = 0,
) -> ConditionReport:
    """Three-coefficient form: d(Ax,Ay) <= a1*d(Bx,By) + a2*q1 + a3*q2
    + L * min-term, admissible only when a1 + a2 + a3 < 1."""
    total = ctrl.a1 + ctrl.a2 + ctrl.a3
    if not total < 1:
        raise CoefficientError(f"a1+a2+a3 must be < 1, got {total}")
    if isinstance(space, SampledIntervalSpace):
        xs, ys, sampled = _grid_pair_arrays(space, sample_pairs, seed)
        d_axy, _, min_term, d_bxy, d_xx, d_yy, _, _ = _vector_terms(space, pair, xs, ys)
        rhs = (
            float(ctrl.a1) * d_bxy
            + float(ctrl.a2) * d_xx * (d_yy + 1.0) / (1.0 + d_bxy)
            + float(ctrl.a3) * d_yy * (d_xx + 1.0) / (1.0 + d_bxy)
            + float(ctrl.L) * min_term
        )
        failures, count = _collect_vector_failures(xs, ys, d_axy, rhs)
        return _make_report("linear", failures, len(xs), sampled, count)

    def evaluate(x, y):
        t1, t2, t3 = comparison_term_parts(x, y, pair, space)
        lhs = space.measure(pair.A.apply(space, x), pair.A.apply(space, y))
        rhs = ctrl.a1 * t1 + ctrl.a2 * t2 + ctrl.a3 * t3 + ctrl.L * compute_min_term(x, y, pair, space)
        return lhs, rhs

    failures, checked, sampled = _scan_pairs_scalar(space, evaluate, sample_pairs, seed)
    return _make_report("linear", failures, checked, sampled)


def check_weighted_contraction(
    space,
    pair: MappingPair,
    ctrl: ControlFunctions,
    sample_pairs: int = DEFAULT_SAMPLE_PAIRS,
    seed: int = 0,
) -> ConditionReport:
    """phi(beta(Bx,By) * d(Ax,Ay)) <= phi(M(x,y)) - psi(M(x,y))."""
    require_phi_basic(ctrl.phi)
    require_psi(ctrl.psi)
    if ctrl.beta is None:
        raise HypothesisViolated("a beta weight is required")
    if isinstance(space, SampledIntervalSpace) and not isinstance(ctrl.beta, TableWeight):
        xs, ys, sampled = _grid_pair_arrays(space, sample_pairs, seed)
        d_axy, m, _, _, _, _, bx, by = _vector_terms(space, pair, xs, ys)
        w = ctrl.beta.weight_arrays(space, bx, by)
        lhs = ctrl.phi.apply_array(w * d_axy)
        rhs = ctrl.phi.apply_array(m) - ctrl.psi.apply_array(m)
        failures, count = _collect_vector_failures(xs, ys, lhs, rhs)
        return _make_report("weighted", failures, len(xs), sampled, count)

    def evaluate(x, y):
        bx, by = pair.B.apply(space, x), pair.B.apply(space, y)
        m = compute_comparison_term(x, y, pair, space)
        lhs = ctrl.phi(
            ctrl.beta.weight(space, bx, by)
            * space.measure(pair.A.apply(space, x), pair.A.apply(space, y))
        )
        rhs = ctrl.phi(m) - ctrl.psi(m)
        return lhs, rhs

    failures, checked, sampled = _scan_pairs_scalar(space, evaluate, sample_pairs, seed)
    return _make_report("weighted", failures, checked, sampled)


def check_admissible(
    space,
    pair: MappingPair,
    beta: PairWeight,
    sample_pairs: int = DEFAULT_SAMPLE_PAIRS,
    seed: int = 0,
) -> ConditionReport:
    """B-beta-admissibility: beta(Bx,By) > 1 implies beta(Ax,Ay) > 1.

    Violations record lhs = 1 (exclusive threshold) against
    rhs = beta(Ax,Ay); a pair with beta(Ax,Ay) exactly 1 is a violation
    with zero slack.
    """
    n = space.point_count
    points = list(space.iter_points())
    if n * n <= PAIR_SCAN_CAP:
        pairs = itertools.product(points, points)
        checked = n * n
        sampled = False
    else:
        rng = random.Random(seed)
        pairs = (
            (points[rng.randrange(n)], points[rng.randrange(n)])
            for _ in range(sample_pairs)
        )
        checked = sample_pairs
        sampled = True
    failures = []
    for x, y in pairs:
        bx, by = pair.B.apply(space, x), pair.B.apply(space, y)
        if beta.weight(space, bx, by) > 1:
            ax, ay = pair.A.apply(space, x), pair.A.apply(space, y)
            w = beta.weight(space, ax, ay)
            if not w > 1:
                failures.append(PairViolation(x, y, Fraction(1), w))
    return _make_report("admissible", failures, checked, sampled)


def check_orbit_regularity(
    space,
    orbit: SequenceRecord,
    limit: Point,
    beta: PairWeight,
) -> ConditionReport:
    """Regularity of beta along a finite recorded orbit.

    Checks beta(x_m, x_n) >= 1 for every recorded forward pair m < n
    (consecutive links included; forward order is how the sequential
    argument consumes the weights), and that the set of indices with
    beta(x_n, limit) >= 1 is nonempty with its latest member inside the
    final quarter of the record (the finite surrogate for "some
    subsequence stays beta-linked to the limit").
    """
    space.require_point(limit)
    pts = orbit.points
    failures = []
    checked = 0
    for m in range(len(pts)):
        for n in range(m + 1, len(pts)):
            checked += 1
            w = beta.weight(space, pts[m], pts[n])
            if not leq(1, w):
                failures.append(PairViolation(pts[m], pts[n], Fraction(1), w))
    linked = [n for n, p in enumerate(pts) if leq(1, beta.weight(space, p, limit))]
    checked += len(pts)
    if not linked or linked[-1] < default_burn_in(len(pts)):
        anchor = pts[-1] if not linked else pts[linked[-1]]
        failures.append(
            PairViolation(anchor, limit, Fraction(1), beta.weight(space, anchor, limit))
        )
    return _make_report("orbit-regular", failures, checked)


def check_coincidence_pair_weights(
    space,
    pair: MappingPair,
    beta: PairWeight,
    tol: Scalar = 0,
) -> ConditionReport:
    """Optional extra hypothesis: for every two coincidence points x, y
    (d(Ax,Bx) <= tol and d(Ay,By) <= tol), beta(Bx,By) >= 1 or
    beta(By,Bx) >= 1.  Reported under its own condition id because the
    coincidence-uniqueness argument never actually invokes it."""
    coincident = [
        p
        for p in space.iter_points()
        if leq(space.measure(pair.A.apply(space, p), pair.B.apply(space, p)), tol)
    ]
    failures = []
    checked = 0
    for x, y in itertools.combinations(coincident, 2):
        checked += 1
        bx, by = pair.B.apply(space, x), pair.B.apply(space, y)
        fwd = beta.weight(space, bx, by)
        bwd = beta.weight(space, by, bx)
        if not (leq(1, fwd) or leq(1, bwd)):
            failures.append(PairViolation(x, y, Fraction(1), max(fwd, bwd)))
    return _make_report("coincidence-weights", failures, checked)
