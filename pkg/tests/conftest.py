"""Shared fixtures and instance generators for the test suite."""

from fractions import Fraction
import random

import pytest

from gmsfp import (
    ConstantMap,
    ControlFunctions,
    FiniteGMS,
    MappingPair,
    RandomInstanceSpec,
    SampledIntervalSpace,
    TableMap,
    check_linear_contraction,
    four_point_space,
    generate_space,
)


@pytest.fixture(scope="session")
def four_point():
    return four_point_space()


@pytest.fixture(scope="session")
def unit_grid_101():
    return SampledIntervalSpace(0.0, 1.0, 101)


@pytest.fixture(scope="session")
def unit_grid_1025():
    return SampledIntervalSpace(0.0, 1.0, 1025)


@pytest.fixture(scope="session")
def dyadic_grid():
    """2^20 + 1 points on [0, 1]; pitch exactly 2^-20."""
    return SampledIntervalSpace(0.0, 1.0, 2**20 + 1)


def random_permutation_pair(rng: random.Random, space: FiniteGMS, constant_bias: float = 0.5):
    """A random (A, B) with B a permutation (so range(A) <= range(B) is
    automatic and the selector derives): A is constant with probability
    ``constant_bias``, else a random table into the space."""
    points = list(space.points)
    b_perm = points[:]
    rng.shuffle(b_perm)
    b_map = TableMap.from_dict(dict(zip(points, b_perm)))
    if rng.random() < constant_bias:
        a_map = ConstantMap(points[rng.randrange(len(points))])
    else:
        a_map = TableMap.from_dict(
            {p: points[rng.randrange(len(points))] for p in points}
        )
    return MappingPair(a_map, b_map)


def linear_holding_instances(count: int, start_seed: int = 0, positive_total: bool = False):
    """Deterministic stream of (space, pair, ctrl) finite instances on
    which the linear three-coefficient condition verifiably holds.

    Rejection-samples random rational spaces, permutation B's and
    mixed constant/random A's with random admissible coefficients until
    ``count`` instances pass the checker.  Exact rational arithmetic
    throughout, so "holds" is a hard fact, not a float verdict.  With
    ``positive_total`` the coefficient sum is kept strictly positive so
    the derived comparison function stays in its admissible class.
    """
    instances = []
    seed = start_seed
    attempts = 0
    while len(instances) < count:
        attempts += 1
        if attempts > 400 * count:
            raise AssertionError("instance generator exhausted")
        rng = random.Random(seed)
        seed += 1
        n = rng.randrange(4, 9)
        space = generate_space(
            RandomInstanceSpec(seed=rng.randrange(2**32), point_count=n, table_kind="metric")
        )
        pair = random_permutation_pair(rng, space)
        low = 1 if positive_total else 0
        coeffs = [Fraction(rng.randrange(low, 22), 64) for _ in range(3)]
        if sum(coeffs) >= 1:
            continue
        ctrl = ControlFunctions(
            a1=coeffs[0], a2=coeffs[1], a3=coeffs[2], L=Fraction(rng.randrange(0, 3), 4)
        )
        report = check_linear_contraction(space, pair, ctrl)
        if report.holds:
            instances.append((space, pair, ctrl))
    return instances
