"""Scalar arithmetic shared across the package.

Distances and control-function values are kept as exact
:class:`fractions.Fraction` objects whenever every input is rational
(JSON strings like ``"4/9"`` or ``"0.5"``, or integers), and as 64-bit
floats otherwise.  Comparisons between exact scalars are exact; in the
float regime an absolute tolerance of ``FLOAT_TOL`` applies at inequality
boundaries, so round-off never manufactures a violation.  Ties
(lhs == rhs) always count as satisfying "<=".
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from .errors import MalformedTable

Scalar = Union[int, float, Fraction]

#: Absolute comparison tolerance for float scalars.
FLOAT_TOL = 1e-12


def is_exact(value: Scalar) -> bool:
    """True when ``value`` participates in exact (rational) arithmetic."""
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def leq(lhs: Scalar, rhs: Scalar, tol: float = FLOAT_TOL) -> bool:
    """``lhs <= rhs``, exact on rationals, tolerant (+tol) on floats."""
    if is_exact(lhs) and is_exact(rhs):
        return lhs <= rhs
    return float(lhs) <= float(rhs) + tol


def near_zero(value: Scalar, tol: float = FLOAT_TOL) -> bool:
    if is_exact(value):
        return value == 0
    return abs(float(value)) <= tol


def parse_scalar(raw) -> Scalar:
    """Parse a JSON-level scalar.

    Strings are exact: ``"p/q"`` and decimal strings both become
    Fractions (``Fraction("0.5") == 1/2`` exactly).  Integers are exact;
    floats stay floats.  Anything else is unusable input.
    """
    if isinstance(raw, bool):
        raise MalformedTable(f"boolean is not a scalar: {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, float):
        if not math.isfinite(raw):
            raise MalformedTable(f"non-finite scalar: {raw!r}")
        return raw
    if isinstance(raw, Fraction):
        return raw
    if isinstance(raw, str):
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedTable(f"unparsable scalar {raw!r}") from exc
    raise MalformedTable(f"unsupported scalar type: {type(raw).__name__}")


def scalar_to_json(value: Scalar):
    """Inverse of :func:`parse_scalar` for report emission.

    Fractions serialize as ``"p/q"`` strings (``"0"``, ``"4/9"``); floats
    pass through and rely on Python's shortest round-trip repr, which
    keeps report bytes stable across runs and platforms.
    """
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, bool):  # pragma: no cover - excluded upstream
        raise MalformedTable("boolean is not a scalar")
    if isinstance(value, int):
        return str(Fraction(value))
    return float(value)


def scalar_str(value: Scalar) -> str:
    """Canonical text form for CSV cells."""
    if is_exact(value):
        return str(Fraction(value))
    return repr(float(value))


def check_finite(value: Scalar, what: str) -> Scalar:
    if isinstance(value, float) and not math.isfinite(value):
        raise MalformedTable(f"{what} is not finite: {value!r}")
    return value
