import random

import pytest
from mpmath import mpf

from padesurf.contour import IntervalContour, make_weight, unit_weight
from padesurf.precision import PrecisionContext


@pytest.fixture(scope="session")
def ctx():
    return PrecisionContext(256)


@pytest.fixture(scope="session")
def segment():
    """The single interval [-1, 1] (genus 0)."""
    return IntervalContour.from_endpoints([(-1, 1)])


@pytest.fixture(scope="session")
def two_intervals():
    """Symmetric genus-1 contour [-1,-1/2] u [1/2,1]."""
    return IntervalContour.from_endpoints([(-1, "-0.5"), ("0.5", 1)])


@pytest.fixture(scope="session")
def three_intervals():
    """Genus-2 contour [-3,-2] u [-1,1] u [2,3]."""
    return IntervalContour.from_endpoints([(-3, -2), (-1, 1), (2, 3)])


@pytest.fixture(scope="session")
def unit_rho(segment, ctx):
    return unit_weight(segment, ctx)


@pytest.fixture(scope="session")
def shifted_rho(segment, ctx):
    """rho(t) = t - 2 on [-1, 1]."""
    return make_weight("polynomial", segment, [-2, 1], ctx=ctx)


def seeded_rng(name: str) -> random.Random:
    return random.Random(f"padesurf-tests:{name}")


def rand_mpf(rng, lo, hi):
    return mpf(lo) + (mpf(hi) - mpf(lo)) * mpf(rng.random())
