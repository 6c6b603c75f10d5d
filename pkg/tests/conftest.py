"""Shared random-instance helpers for the test suite.

Instance generation uses seeded `random.Random` so every run exercises the
same instances.  Seeds live in [-10, 10] with denominators <= 10;
coefficients are kept a little smaller to curb bignum growth over long
orbits.
"""

from __future__ import annotations

import random
from fractions import Fraction

from sixrde import CoefficientSequence, InitialConditions, iterate


def random_rational(rng: random.Random, lo=-10, hi=10, max_den=10, nonzero=False):
    while True:
        num = rng.randint(lo, hi)
        if num or not nonzero:
            return Fraction(num, rng.randint(1, max_den))


def random_initial_conditions(rng: random.Random) -> InitialConditions:
    return InitialConditions(
        tuple(random_rational(rng, nonzero=True) for _ in range(6))
    )


def random_coefficients(rng: random.Random, kind: str) -> CoefficientSequence:
    def coeff():
        return random_rational(rng, lo=-5, hi=5, max_den=5)

    if kind == "constant":
        return CoefficientSequence.constant(coeff(), coeff())
    period = int(kind.removeprefix("periodic"))
    return CoefficientSequence.periodic(
        [coeff() for _ in range(period)], [coeff() for _ in range(period)]
    )


COEFF_KINDS = ("constant", "periodic2", "periodic3", "periodic4")


def random_instance(rng: random.Random, kind=None):
    if kind is None:
        kind = rng.choice(COEFF_KINDS)
    return random_initial_conditions(rng), random_coefficients(rng, kind)


def nonsingular_instance(rng: random.Random, steps: int, kind=None):
    """Draw instances until one survives `steps` iterations; return with orbit."""
    while True:
        ic, coeffs = random_instance(rng, kind)
        orbit = iterate(ic, coeffs, steps)
        if orbit.halt is None:
            return ic, coeffs, orbit
