"""Walkthrough: verifying a contraction condition and then actually
computing the coincidence / common fixed point it promises.

The pair here is A(x) = x/2 and B = identity on a dyadic grid of [0, 1]:
the comparison-term condition d(Ax, Ay) <= phi(M(x, y)) + C*min holds
with phi(t) = t/2 and C = 0, so the orbit z_n = B x_{n+1} = A x_n must
converge to the unique common fixed point 0.

Run:  python demos/03_coincidence_iteration.py
"""

from fractions import Fraction

from gmsfp import (
    ControlFunctions,
    HalvingMap,
    IdentityMap,
    MappingPair,
    SampledIntervalSpace,
    ScaleFn,
    bruteforce_coincidences,
    check_rational_contraction,
    check_weak_compatibility,
    find_coincidence,
    jungck_iterate,
)

grid = SampledIntervalSpace(0.0, 1.0, 2**20 + 1)
pair = MappingPair(HalvingMap(), IdentityMap())
ctrl = ControlFunctions(phi=ScaleFn(Fraction(1, 2)))

report = check_rational_contraction(grid, pair, ctrl, sample_pairs=200_000, seed=1)
print(f"contraction condition: holds={report.holds} over {report.pairs_checked} sampled pairs")

trace = jungck_iterate(grid, pair, x0=1.0, tol=1e-9)
print(f"\norbit from x0 = 1: status {trace.status} after {trace.iterations} steps")
print("   n     z_n            step d(z_n, z_n+1)")
for n in (0, 1, 2, 5, 10, 15, trace.iterations - 1):
    step = trace.step_dist[n] if n < len(trace.step_dist) else ""
    print(f"  {n:2d}   {trace.z[n]:<12.8g}   {step}")

print("\nweakly compatible:", bool(check_weak_compatibility(grid, pair, tol=1e-9)))
print("brute-force coincidence scan:", bruteforce_coincidences(grid, pair, tol=1e-9))

result = find_coincidence(grid, pair, ctrl, x0=1.0, tol=1e-9,
                          checker_kwargs={"sample_pairs": 50_000})
print(f"\nverified: coincidence value {result.value} at point {result.point},"
      f" common fixed point: {result.is_common_fixed_point},"
      f" unique on the grid: {result.unique_within_space}")

# The engine diagnoses hypothesis violations instead of looping forever:
from gmsfp import FiniteGMS, NoConvergence, TableMap

two = FiniteGMS(["a", "b"], [[0, 1], [1, 0]])
swap = MappingPair(TableMap.from_dict({"a": "b", "b": "a"}), IdentityMap())
try:
    find_coincidence(two, swap, None, "a", tol=1e-9, override=True)
except NoConvergence as exc:
    print(f"\nswap map (no contraction): {exc}")
    print("   trace statuses seen:", exc.trace.status)
