"""Generalized metric spaces with the quadrilateral inequality.

A *generalized metric space* (g.m.s.) keeps the identity and symmetry
axioms of a metric but replaces the triangle inequality with the
four-point (quadrilateral) inequality

    d(w, x) <= d(w, y) + d(y, z) + d(z, x)

over pairwise-distinct w, x, y, z.  Every metric is a g.m.s.; the
converse fails, and in a g.m.s. a convergent sequence need not be Cauchy,
limits need not be unique, and d need not be continuous.  This module
provides:

* :class:`FiniteGMS` — a finite point set with an explicit distance
  table (exact rationals whenever the inputs are rational);
* :class:`SampledIntervalSpace` — an evenly sampled real interval with
  the absolute-difference distance, the desk-scale stand-in for a
  continuous space;
* :func:`validate_gms` — axiom checking with violation witnesses, plus a
  full record of triangle-inequality violations so a caller can certify
  "g.m.s. but not metric";
* sequence predicates (:func:`converges_to`, :func:`is_gms_cauchy`) and
  :func:`detect_pathologies`, which flags the non-metric behaviours on
  finite probe sequences;
* two built-in fixture spaces exhibiting those behaviours.

All operations are pure functions of immutable inputs and are safe to
call concurrently.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Hashable, Iterable, Optional, Sequence, Tuple

import numpy as np

from ._numeric import (
    FLOAT_TOL,
    Scalar,
    is_exact,
    leq,
    near_zero,
    parse_scalar,
    scalar_to_json,
)
from .errors import MalformedTable, UnknownPoint

Point = Hashable

#: Exhaustive quadrilateral validation is O(n^4); above this many points
#: validate_gms switches to seeded random sampling of quadruples.
EXHAUSTIVE_POINT_CAP = 64

#: Default number of sampled quadruples above the cap.
DEFAULT_SAMPLE_QUADRUPLES = 100_000


# ---------------------------------------------------------------------------
# Spaces
# ---------------------------------------------------------------------------


class FiniteGMS:
    """A finite point set with a symmetric nonnegative distance table.

    ``points`` are opaque hashable labels (typically strings such as
    ``"5/6"``); ``dist`` is a square table of scalars.  Construction
    checks only *usability* (square shape, nonnegative finite entries);
    the g.m.s. axioms themselves are checked by :func:`validate_gms` and
    reported as data, never as exceptions.
    """

    __slots__ = ("points", "dist", "_index")

    def __init__(self, points: Sequence[Point], dist: Sequence[Sequence[Scalar]]):
        pts = tuple(points)
        if not pts:
            raise MalformedTable("a space needs at least one point")
        if len(set(pts)) != len(pts):
            raise MalformedTable("duplicate point labels")
        n = len(pts)
        if len(dist) != n or any(len(row) != n for row in dist):
            raise MalformedTable(
                f"distance table must be {n}x{n} to match the point list"
            )
        rows = []
        for row in dist:
            entries = []
            for entry in row:
                value = entry if is_exact(entry) or isinstance(entry, float) else parse_scalar(entry)
                if isinstance(value, float) and not math.isfinite(value):
                    raise MalformedTable(f"non-finite distance entry {entry!r}")
                if value < 0:
                    raise MalformedTable(f"negative distance entry {entry!r}")
                entries.append(value)
            rows.append(tuple(entries))
        self.points: Tuple[Point, ...] = pts
        self.dist: Tuple[Tuple[Scalar, ...], ...] = tuple(rows)
        self._index: Dict[Point, int] = {p: i for i, p in enumerate(pts)}

    # -- space protocol ----------------------------------------------------

    @property
    def point_count(self) -> int:
        return len(self.points)

    def iter_points(self) -> Iterable[Point]:
        return iter(self.points)

    def has_point(self, p: Point) -> bool:
        return p in self._index

    def require_point(self, p: Point) -> Point:
        if p not in self._index:
            raise UnknownPoint(f"unknown point {p!r}")
        return p

    def index(self, p: Point) -> int:
        self.require_point(p)
        return self._index[p]

    def distance(self, p: Point, q: Point) -> Scalar:
        return self.dist[self.index(p)][self.index(q)]

    def measure(self, p: Point, q: Point) -> Scalar:
        """Distance between raw map outputs; on a finite space those are
        necessarily members, so this is just the table lookup."""
        return self.distance(p, q)

    def normalize(self, p: Point) -> Point:
        """Map outputs on a finite space must already be members."""
        return self.require_point(p)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"FiniteGMS({self.point_count} points)"

    # -- JSON --------------------------------------------------------------

    @classmethod
    def from_json_dict(cls, obj: dict) -> "FiniteGMS":
        try:
            points = obj["points"]
            dist = obj["dist"]
        except (TypeError, KeyError) as exc:
            raise MalformedTable("g.m.s. JSON needs 'points' and 'dist'") from exc
        parsed = [[parse_scalar(e) for e in row] for row in dist]
        return cls(points, parsed)

    def to_json_dict(self) -> dict:
        return {
            "points": list(self.points),
            "dist": [[scalar_to_json(e) for e in row] for row in self.dist],
        }


class SampledIntervalSpace:
    """An evenly sampled interval ``[lower, upper]`` under ``|x - y|``.

    The points are the grid values ``lower + k*pitch`` for
    ``k = 0..grid_count-1`` with ``pitch = (upper-lower)/(grid_count-1)``.
    A metric is in particular a g.m.s., so the induced finite table
    always validates.  ``normalize`` snaps a raw real to the nearest grid
    value (ties round half-to-even), which is how the iteration engine
    keeps catalog maps closed over the grid.
    """

    __slots__ = ("lower", "upper", "grid_count", "pitch")

    def __init__(self, lower: float, upper: float, grid_count: int):
        lower = float(lower)
        upper = float(upper)
        if not (math.isfinite(lower) and math.isfinite(upper)) or not lower < upper:
            raise MalformedTable("interval needs finite lower < upper")
        if grid_count < 2:
            raise MalformedTable("grid_count must be at least 2")
        self.lower = lower
        self.upper = upper
        self.grid_count = int(grid_count)
        self.pitch = (upper - lower) / (self.grid_count - 1)

    @property
    def point_count(self) -> int:
        return self.grid_count

    def point_at(self, k: int) -> float:
        return self.lower + k * self.pitch

    def iter_points(self) -> Iterable[float]:
        return (self.point_at(k) for k in range(self.grid_count))

    def grid_values(self) -> np.ndarray:
        return self.lower + np.arange(self.grid_count, dtype=np.float64) * self.pitch

    def snap(self, value: float) -> float:
        k = round((float(value) - self.lower) / self.pitch)
        k = min(max(k, 0), self.grid_count - 1)
        return self.point_at(k)

    def snap_array(self, values: np.ndarray) -> np.ndarray:
        k = np.round((values - self.lower) / self.pitch)
        k = np.clip(k, 0, self.grid_count - 1)
        return self.lower + k * self.pitch

    def has_point(self, p) -> bool:
        if not isinstance(p, (int, float)) or isinstance(p, bool):
            return False
        v = float(p)
        if not (self.lower <= v <= self.upper):
            return False
        return v == self.snap(v)

    def require_point(self, p) -> float:
        if not self.has_point(p):
            raise UnknownPoint(f"{p!r} is not a grid point")
        return float(p)

    def distance(self, p, q) -> float:
        return abs(self.require_point(p) - self.require_point(q))

    def measure(self, p, q) -> float:
        """|p - q| for raw (possibly off-grid) real values; condition
        checkers evaluate catalog maps unsnapped and measure with this."""
        return abs(float(p) - float(q))

    def normalize(self, value: float) -> float:
        return self.snap(value)

    def as_finite(self, max_points: int = 256) -> FiniteGMS:
        """Materialize the grid as a FiniteGMS for desk-scale validation."""
        if self.grid_count > max_points:
            raise MalformedTable(
                f"grid has {self.grid_count} points; cap is {max_points}"
            )
        values = [self.point_at(k) for k in range(self.grid_count)]
        table = [[abs(a - b) for b in values] for a in values]
        return FiniteGMS(values, table)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return (
            f"SampledIntervalSpace([{self.lower}, {self.upper}], "
            f"n={self.grid_count})"
        )

    @classmethod
    def from_json_dict(cls, obj: dict) -> "SampledIntervalSpace":
        try:
            return cls(obj["lower"], obj["upper"], obj["grid_count"])
        except (TypeError, KeyError) as exc:
            raise MalformedTable(
                "interval JSON needs 'lower', 'upper', 'grid_count'"
            ) from exc

    def to_json_dict(self) -> dict:
        return {
            "kind": "interval",
            "lower": self.lower,
            "upper": self.upper,
            "grid_count": self.grid_count,
        }


def space_from_json_dict(obj: dict):
    """Dispatch a JSON space description to the right constructor."""
    if not isinstance(obj, dict):
        raise MalformedTable("space description must be a JSON object")
    if obj.get("kind") == "interval" or ("lower" in obj and "grid_count" in obj):
        return SampledIntervalSpace.from_json_dict(obj)
    return FiniteGMS.from_json_dict(obj)


# ---------------------------------------------------------------------------
# Sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SequenceRecord:
    """A finite recorded sequence of points with an optional declared limit."""

    points: Tuple[Point, ...]
    candidate_limit: Optional[Point] = None

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if not self.points:
            raise MalformedTable("sequence record must be nonempty")

    def __len__(self) -> int:
        return len(self.points)


def default_burn_in(length: int) -> int:
    """Index where the checked tail starts: the last quarter of the record."""
    return (3 * length) // 4 if length >= 4 else max(0, length - 1)


def converges_to(
    space,
    seq: SequenceRecord,
    x: Point,
    tol: Scalar,
    burn_in: Optional[int] = None,
) -> bool:
    """Finite-sequence surrogate for ``lim d(x_n, x) = 0``.

    True iff every recorded distance d(seq_n, x) past ``burn_in``
    (default: start of the last quarter) is <= tol.  Note that in a
    g.m.s. this limit need not be unique.
    """
    space.require_point(x)
    start = default_burn_in(len(seq)) if burn_in is None else max(0, burn_in)
    tail = seq.points[start:] or seq.points[-1:]
    return all(leq(space.distance(p, x), tol) for p in tail)


@dataclass(frozen=True)
class CauchyCheck:
    """Outcome of the Cauchy predicate; falsy when the tail is not Cauchy."""

    is_cauchy: bool
    eps: float
    #: worst offending pair past the burn-in when not Cauchy
    witness: Optional[Tuple[int, int, Scalar]] = None

    def __bool__(self) -> bool:
        return self.is_cauchy


def is_gms_cauchy(
    space,
    seq: SequenceRecord,
    eps: Scalar,
    burn_in: Optional[int] = None,
) -> CauchyCheck:
    """Finite surrogate for the g.m.s. Cauchy property.

    True iff some threshold K no later than ``burn_in`` has
    d(seq_r, seq_s) < eps for all r > s >= K; equivalently, all pairwise
    distances on the tail are < eps.  When false, the witness is the
    maximal-distance pair (r, s) on the tail, which defeats every
    admissible K.
    """
    if len(seq) < 2:
        raise MalformedTable("Cauchy check needs at least two terms")
    start = default_burn_in(len(seq)) if burn_in is None else max(0, burn_in)
    if start > len(seq) - 2:
        start = len(seq) - 2
    worst = None
    for s in range(start, len(seq) - 1):
        for r in range(s + 1, len(seq)):
            d = space.distance(seq.points[r], seq.points[s])
            if worst is None or d > worst[2]:
                worst = (r, s, d)
    assert worst is not None
    if leq(eps, worst[2]):  # worst >= eps: some pair defeats every K
        return CauchyCheck(False, float(eps), worst)
    return CauchyCheck(True, float(eps), None)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    """One failed inequality instance.

    ``witness`` conventions: identity -> (p, q); symmetry -> (p, q);
    triangle -> (end1, mid, end2) asserting d(end1,end2) <= d(end1,mid)
    + d(mid,end2); quadrilateral -> (p, q, m1, m2) asserting
    d(p,q) <= d(p,m1) + d(m1,m2) + d(m2,q).
    """

    axiom: str
    witness: Tuple[Point, ...]
    lhs: Scalar
    rhs: Scalar

    def to_json_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "witness": list(self.witness),
            "lhs": scalar_to_json(self.lhs),
            "rhs": scalar_to_json(self.rhs),
        }


@dataclass(frozen=True)
class ValidationReport:
    """Axiom verdict plus the full triangle-violation record.

    ``valid_gms`` is decided by the identity/symmetry/quadrilateral
    axioms alone; ``triangle_violations`` is informational and certifies
    "g.m.s. but not metric" when nonempty.
    """

    valid_gms: bool
    violations: Tuple[Violation, ...]
    triangle_violations: Tuple[Violation, ...]
    quadruples_checked: int
    triples_checked: int
    sampled: bool

    @property
    def is_metric(self) -> bool:
        return self.valid_gms and not self.triangle_violations

    def to_json_dict(self) -> dict:
        return {
            "valid_gms": self.valid_gms,
            "is_metric": self.is_metric,
            "violations": [v.to_json_dict() for v in self.violations],
            "triangle_violations": [
                v.to_json_dict() for v in self.triangle_violations
            ],
            "quadruples_checked": self.quadruples_checked,
            "triples_checked": self.triples_checked,
            "sampled": self.sampled,
        }


def _quad_instances(idx: Tuple[int, int, int, int]):
    """The 12 distinct quadrilateral inequality instances of a 4-subset."""
    for p, q in itertools.combinations(idx, 2):
        m1, m2 = (i for i in idx if i not in (p, q))
        yield p, q, m1, m2
        yield p, q, m2, m1


def validate_gms(
    space: FiniteGMS,
    sample_quadruples: int = DEFAULT_SAMPLE_QUADRUPLES,
    seed: int = 0,
) -> ValidationReport:
    """Check the g.m.s. axioms on a finite space.

    Identity, symmetry and triangle scans are always exhaustive.  The
    quadrilateral scan is exhaustive up to ``EXHAUSTIVE_POINT_CAP``
    points and switches to seeded random sampling of
    ``sample_quadruples`` quadruples above it (the scan is O(n^4)).
    Violations are reported in deterministic point-index order.
    """
    n = space.point_count
    dist = space.dist
    pts = space.points
    violations = []

    for i in range(n):
        if not near_zero(dist[i][i]):
            violations.append(Violation("identity", (pts[i], pts[i]), dist[i][i], 0))
    for i in range(n):
        for j in range(i + 1, n):
            if near_zero(dist[i][j]):
                violations.append(Violation("identity", (pts[i], pts[j]), dist[i][j], 0))
            dij, dji = dist[i][j], dist[j][i]
            same = (dij == dji) if (is_exact(dij) and is_exact(dji)) else (
                abs(float(dij) - float(dji)) <= FLOAT_TOL
            )
            if not same:
                violations.append(Violation("symmetry", (pts[i], pts[j]), dij, dji))

    triangles = []
    triples = 0
    for i, j in itertools.combinations(range(n), 2):
        for k in range(n):
            if k in (i, j):
                continue
            triples += 1
            lhs = dist[i][j]
            rhs = dist[i][k] + dist[k][j]
            if not leq(lhs, rhs):
                triangles.append(Violation("triangle", (pts[i], pts[k], pts[j]), lhs, rhs))

    quadruples = 0
    sampled = n > EXHAUSTIVE_POINT_CAP
    if n >= 4:
        if not sampled:
            subsets = itertools.combinations(range(n), 4)
            for subset in subsets:
                quadruples += 1
                for p, q, m1, m2 in _quad_instances(subset):
                    lhs = dist[p][q]
                    rhs = dist[p][m1] + dist[m1][m2] + dist[m2][q]
                    if not leq(lhs, rhs):
                        violations.append(
                            Violation(
                                "quadrilateral",
                                (pts[p], pts[q], pts[m1], pts[m2]),
                                lhs,
                                rhs,
                            )
                        )
        else:
            rng = random.Random(seed)
            for _ in range(sample_quadruples):
                subset = tuple(sorted(rng.sample(range(n), 4)))
                quadruples += 1
                for p, q, m1, m2 in _quad_instances(subset):
                    lhs = dist[p][q]
                    rhs = dist[p][m1] + dist[m1][m2] + dist[m2][q]
                    if not leq(lhs, rhs):
                        violations.append(
                            Violation(
                                "quadrilateral",
                                (pts[p], pts[q], pts[m1], pts[m2]),
                                lhs,
                                rhs,
                            )
                        )

    return ValidationReport(
        valid_gms=not violations,
        violations=tuple(violations),
        triangle_violations=tuple(triangles),
        quadruples_checked=quadruples,
        triples_checked=triples,
        sampled=sampled,
    )


# ---------------------------------------------------------------------------
# Pathology detection
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiscontinuityWitness:
    """A convergent probe x_n -> limit and a point y with
    |d(x_n, y) - d(limit, y)| bounded away from zero on the tail."""

    limit: Point
    at: Point
    limit_distance: Scalar
    tail_gap: Scalar


@dataclass(frozen=True)
class ProbeFindings:
    """Per-probe pathology flags (all on the finite record only)."""

    limits: Tuple[Point, ...]
    convergent: bool
    cauchy: CauchyCheck
    convergent_not_cauchy: bool
    multiple_limits: bool
    limit_separation: Optional[Scalar]
    discontinuity: Optional[DiscontinuityWitness]

    def to_json_dict(self) -> dict:
        out = {
            "limits": list(self.limits),
            "convergent": self.convergent,
            "is_cauchy": self.cauchy.is_cauchy,
            "convergent_not_cauchy": self.convergent_not_cauchy,
            "multiple_limits": self.multiple_limits,
        }
        if self.cauchy.witness is not None:
            r, s, d = self.cauchy.witness
            out["cauchy_witness"] = {"r": r, "s": s, "distance": scalar_to_json(d)}
        if self.limit_separation is not None:
            out["limit_separation"] = scalar_to_json(self.limit_separation)
        if self.discontinuity is not None:
            w = self.discontinuity
            out["discontinuity_witness"] = {
                "limit": w.limit,
                "at": w.at,
                "limit_distance": scalar_to_json(w.limit_distance),
                "tail_gap": scalar_to_json(w.tail_gap),
            }
        return out


@dataclass(frozen=True)
class PathologyReport:
    findings: Tuple[ProbeFindings, ...]

    @property
    def any_convergent_not_cauchy(self) -> bool:
        return any(f.convergent_not_cauchy for f in self.findings)

    @property
    def any_multiple_limits(self) -> bool:
        return any(f.multiple_limits for f in self.findings)

    @property
    def any_discontinuity(self) -> bool:
        return any(f.discontinuity is not None for f in self.findings)

    def to_json_dict(self) -> dict:
        return {
            "probes": [f.to_json_dict() for f in self.findings],
            "any_convergent_not_cauchy": self.any_convergent_not_cauchy,
            "any_multiple_limits": self.any_multiple_limits,
            "any_discontinuity": self.any_discontinuity,
        }


#: Candidate-limit scans cap out on huge sampled spaces.
_PATHOLOGY_SCAN_CAP = 10_000


def _candidate_points(space, probe: SequenceRecord):
    if space.point_count <= _PATHOLOGY_SCAN_CAP:
        candidates = list(space.iter_points())
    else:
        step = max(1, space.point_count // _PATHOLOGY_SCAN_CAP)
        candidates = list(itertools.islice(space.iter_points(), 0, None, step))
    if probe.candidate_limit is not None and probe.candidate_limit not in candidates:
        candidates.append(probe.candidate_limit)
    return candidates


def detect_pathologies(
    space,
    probe_sequences: Sequence[SequenceRecord],
    tol: Scalar = Fraction(1, 20),
    cauchy_eps: Scalar = Fraction(1, 2),
    burn_in: Optional[int] = None,
    separation: Optional[Scalar] = None,
    discontinuity_margin: Optional[Scalar] = None,
) -> PathologyReport:
    """Flag non-metric behaviour exhibited by probe sequences.

    Per probe: (a) convergent (within ``tol`` on the tail) but not
    Cauchy at ``cauchy_eps``; (b) two limits separated by more than
    ``separation`` (default 2*tol, so tolerance-ball artifacts on finite
    truncations never count); (c) a discontinuity witness: a point y
    whose distances to the tail stay at least ``discontinuity_margin``
    (default 2*tol) away from d(limit, y).

    On a metric space none of the flags can fire for a genuinely
    convergent probe, which is exactly what makes them pathology
    certificates.
    """
    separation = 2 * tol if separation is None else separation
    margin = 2 * tol if discontinuity_margin is None else discontinuity_margin
    findings = []
    for probe in probe_sequences:
        for p in probe.points:
            space.require_point(p)
        start = default_burn_in(len(probe)) if burn_in is None else burn_in
        tail = probe.points[start:] or probe.points[-1:]

        limits = [
            x
            for x in _candidate_points(space, probe)
            if converges_to(space, probe, x, tol, burn_in=start)
        ]
        convergent = bool(limits)
        cauchy = (
            is_gms_cauchy(space, probe, cauchy_eps, burn_in=start)
            if len(probe) >= 2
            else CauchyCheck(True, float(cauchy_eps), None)
        )

        multiple = False
        best_sep = None
        for x1, x2 in itertools.combinations(limits, 2):
            d = space.distance(x1, x2)
            if best_sep is None or d > best_sep:
                best_sep = d
            if not leq(d, separation):
                multiple = True

        witness = None
        for x in limits:
            for y in _candidate_points(space, probe):
                if y == x:
                    continue
                ref = space.distance(x, y)
                gap = min(
                    abs(space.distance(p, y) - ref) for p in tail
                )
                if not leq(gap, margin):
                    witness = DiscontinuityWitness(x, y, ref, gap)
                    break
            if witness is not None:
                break

        findings.append(
            ProbeFindings(
                limits=tuple(limits),
                convergent=convergent,
                cauchy=cauchy,
                convergent_not_cauchy=convergent and not cauchy.is_cauchy,
                multiple_limits=multiple,
                limit_separation=best_sep,
                discontinuity=witness,
            )
        )
    return PathologyReport(tuple(findings))


# ---------------------------------------------------------------------------
# Built-in fixtures
# ---------------------------------------------------------------------------


def four_point_space() -> FiniteGMS:
    """Four rationals whose table satisfies the quadrilateral inequality
    but violates the triangle inequality (a g.m.s. that is not metric):
    d(5/6,7/12) = 8/9 > 7/9 = d(5/6,2/3) + d(2/3,7/12)."""
    labels = ("5/6", "2/3", "7/12", "8/15")
    f = Fraction
    d = {
        ("5/6", "2/3"): f(4, 9),
        ("7/12", "8/15"): f(4, 9),
        ("5/6", "8/15"): f(1, 3),
        ("2/3", "7/12"): f(1, 3),
        ("5/6", "7/12"): f(8, 9),
        ("2/3", "8/15"): f(8, 9),
    }
    table = []
    for a in labels:
        row = []
        for b in labels:
            if a == b:
                row.append(f(0))
            else:
                row.append(d.get((a, b)) or d[(b, a)])
        table.append(row)
    return FiniteGMS(labels, table)


def reciprocal_space(count: int = 64) -> FiniteGMS:
    """Two anchor points {0, 2} joined to the reciprocals {1/n : n <= count}.

    Distances: 0 on the diagonal; 1 between distinct anchors and between
    distinct reciprocals; the reciprocal member's own value between an
    anchor and a reciprocal.  The probe (1/n) then converges to both
    anchors, is not Cauchy (distinct reciprocals sit at distance 1), and
    witnesses a discontinuous distance — none of which a metric allows.
    """
    if count < 2:
        raise MalformedTable("need at least two reciprocal points")
    anchors = [Fraction(0), Fraction(2)]
    recips = [Fraction(1, n) for n in range(1, count + 1)]
    values = anchors + recips
    labels = tuple(str(v) for v in values)
    is_anchor = [True, True] + [False] * len(recips)

    def dist(i: int, j: int) -> Fraction:
        if i == j:
            return Fraction(0)
        if is_anchor[i] == is_anchor[j]:
            return Fraction(1)
        return values[j] if is_anchor[i] else values[i]

    n = len(values)
    table = [[dist(i, j) for j in range(n)] for i in range(n)]
    return FiniteGMS(labels, table)


def reciprocal_probe(count: int = 64) -> SequenceRecord:
    """The sequence (1/1, 1/2, ..., 1/count) as labels of
    :func:`reciprocal_space`, declared limit 0."""
    return SequenceRecord(
        tuple(str(Fraction(1, n)) for n in range(1, count + 1)),
        candidate_limit="0",
    )
