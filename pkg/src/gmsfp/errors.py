"""Semantic exception hierarchy.

Public functions never raise bare ``ValueError``/``KeyError`` for domain
failures; they raise one of the classes below so callers (and the CLI exit
code mapping) can distinguish "unusable input" from "hypothesis violated"
from "did not converge".
"""

from __future__ import annotations


class GMSFPError(Exception):
    """Base class for every error raised by this package."""


class MalformedTable(GMSFPError, ValueError):
    """Input is structurally unusable: non-square table, negative entry,
    NaN, unparsable scalar, or an inconsistent catalog description.

    Distinct from an axiom violation, which is reported as data."""


class UnknownPoint(GMSFPError, LookupError):
    """A referenced point is not a member of the space."""


class CoefficientError(GMSFPError, ValueError):
    """Inadmissible coefficient configuration (e.g. a1+a2+a3 >= 1).

    Signals a misconfigured check, not a condition violation."""


class HypothesisViolated(GMSFPError):
    """A required hypothesis failed (a condition checker reported
    violations, or a control function is outside its admissible class).
    Carries the offending report when available."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SelectorFailure(GMSFPError):
    """The chosen right-inverse of B is undefined at a required value,
    i.e. the hypothesis range(A) subset-of range(B) failed at runtime.

    ``trace`` holds the partial iteration trace when raised mid-orbit."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class NoConvergence(GMSFPError):
    """Iteration exhausted its budget (or cycled) without meeting the
    requested tolerance. Carries partial results when available."""

    def __init__(self, message, trace=None, solution=None):
        super().__init__(message)
        self.trace = trace
        self.solution = solution


class StateSetMismatch(GMSFPError, ValueError):
    """Two bounded functionals (or a functional and a problem) disagree on
    the underlying state set."""


class BoundednessViolation(GMSFPError):
    """The a-priori bound on the coupled operator's output failed.

    For Lipschitz constants <= 1 the bound is provable, so inside that
    regime this signals an implementation fault rather than user error."""


class GenerationExhausted(GMSFPError):
    """Rejection sampling hit its attempt budget without an acceptable
    instance."""
