"""Walkthrough: convergence misbehaves once the triangle inequality is
gone.  A single sequence converges to two different points, fails to be
Cauchy, and witnesses a discontinuous distance.

Run:  python demos/02_sequence_pathologies.py
"""

from fractions import Fraction

from gmsfp import (
    SequenceRecord,
    converges_to,
    detect_pathologies,
    is_gms_cauchy,
    reciprocal_probe,
    reciprocal_space,
)

space = reciprocal_space(64)
probe = reciprocal_probe(64)

print("space: anchors {0, 2} plus reciprocals {1/n : n <= 64}")
print("probe: the sequence 1, 1/2, 1/3, ..., 1/64\n")

tol = Fraction(1, 20)
print(f"converges to 0 (tol {tol}):", converges_to(space, probe, "0", tol))
print(f"converges to 2 (tol {tol}):", converges_to(space, probe, "2", tol))
print("   ...two distinct limits at distance", space.distance("0", "2"))

check = is_gms_cauchy(space, probe, Fraction(1, 2))
r, s, d = check.witness
print(f"\nCauchy at eps 1/2: {check.is_cauchy}"
      f" (witness pair indexes {s} < {r} at distance {d})")

report = detect_pathologies(space, [probe])
finding = report.findings[0]
w = finding.discontinuity
print("\npathology flags:")
print("   convergent but not Cauchy:", finding.convergent_not_cauchy)
print("   multiple limits:", finding.multiple_limits, "separation", finding.limit_separation)
print(f"   discontinuity: d(x_n, {w.at}) stays >= {w.tail_gap} away from"
      f" d({w.limit}, {w.at}) = {w.limit_distance}")

# On a plain metric grid the same detector stays silent.
from gmsfp import SampledIntervalSpace

grid = SampledIntervalSpace(0.0, 1.0, 1025)
euclid = SequenceRecord(tuple(2.0 ** -(n + 1) for n in range(10)), candidate_limit=0.0)
clean = detect_pathologies(grid, [euclid]).findings[0]
print("\nsame probe style on a metric grid:",
      "no flags" if not (clean.convergent_not_cauchy or clean.multiple_limits
                         or clean.discontinuity) else "flags?!")
