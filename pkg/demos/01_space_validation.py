"""Walkthrough: what a generalized metric space is, and how validation
reports the difference from a metric.

Run:  python demos/01_space_validation.py
"""

from gmsfp import (
    FiniteGMS,
    SampledIntervalSpace,
    four_point_space,
    generate_space,
    RandomInstanceSpec,
    validate_gms,
)


def show(title, report):
    print(f"\n== {title}")
    print(f"   valid g.m.s.: {report.valid_gms}   metric: {report.is_metric}")
    print(f"   quadruple sets checked: {report.quadruples_checked}"
          f"   (sampled: {report.sampled})")
    for v in report.violations[:3]:
        print(f"   axiom violation [{v.axiom}] at {v.witness}: {v.lhs} vs {v.rhs}")
    for v in report.triangle_violations[:3]:
        a, mid, b = v.witness
        print(f"   triangle fails at ({a}, {b}) via {mid}: {v.lhs} > {v.rhs}")


# The four-point rational space: every four-point (quadrilateral)
# inequality holds, yet d(5/6, 7/12) = 8/9 exceeds the two-hop detour
# through 2/3, which is 4/9 + 1/3 = 7/9.  A genuine g.m.s. that no
# metric can reproduce -- and the arithmetic is exact rationals, so the
# verdict is a fact, not a float comparison.
show("four rational points", validate_gms(four_point_space()))

# Any metric is automatically a g.m.s.: an evenly sampled interval.
grid = SampledIntervalSpace(0.0, 1.0, 33)
show("sampled interval [0, 1]", validate_gms(grid.as_finite()))

# Break the identity axiom on purpose and watch the report flag it.
broken_table = [list(row) for row in four_point_space().dist]
broken_table[0][1] = 0
broken_table[1][0] = 0
show("identity axiom broken", validate_gms(FiniteGMS(four_point_space().points, broken_table)))

# Seeded generators produce reproducible random instances of either kind.
show(
    "random metric table (seed 11)",
    validate_gms(generate_space(RandomInstanceSpec(seed=11, point_count=6, table_kind="metric"))),
)
show(
    "random g.m.s.-only table (seed 11)",
    validate_gms(generate_space(RandomInstanceSpec(seed=11, point_count=6, table_kind="gms_only"))),
)
