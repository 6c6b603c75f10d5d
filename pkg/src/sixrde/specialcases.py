"""Dedicated closed forms for constant, 2-periodic, and 4-periodic coefficients.

Each operation transcribes the per-class displayed product formula for its
coefficient case directly (rather than routing through the general path),
with the seeds written c = x_(-5), d = x_(-4), e = x_(-3), f = x_(-2),
g = x_(-1), h = x_0.  Every formula is cross-checked against direct
iteration and the general closed form by the test suite.

For a = -1 the four per-class formulas collapse to a ratio raised to a
parity-counting exponent.  The shipped exponents are floor(n/2) for the
x_(4n-5) and x_(4n-4) families and floor(n/2)/ceil(n/2) for the numerator/
denominator of the x_(4n-3) and x_(4n-2) families; these are the assignments
that match direct iteration on all four residue classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    CoefficientSequence,
    InitialConditions,
    RationalLike,
    SingularClosedForm,
    WrongCase,
    as_rational,
    decompose_index,
)

__all__ = [
    "ConstantCoeffs",
    "PeriodicCoeffs2",
    "PeriodicCoeffs4",
    "term_const_general",
    "term_const_a_neg1",
    "term_const_a1",
    "term_periodic2",
    "term_periodic4",
]


@dataclass(frozen=True)
class ConstantCoeffs:
    """Constant coefficient pair (a, b).

    The classical setting takes both nonzero; that is deliberately not
    enforced here (b = 0 is a useful telescoping sanity case).
    """

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", as_rational(self.a))
        object.__setattr__(self, "b", as_rational(self.b))

    def as_sequence(self) -> CoefficientSequence:
        return CoefficientSequence.constant(self.a, self.b)


@dataclass(frozen=True)
class PeriodicCoeffs2:
    """2-periodic coefficients (a_0, a_1), (b_0, b_1).

    The classical hypotheses a_0 != a_1 and b_0 != b_1 are recorded but not
    enforced; the formulas stay valid when they coincide.
    """

    a: tuple[Fraction, Fraction]
    b: tuple[Fraction, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "a", _as_tuple(self.a, 2))
        object.__setattr__(self, "b", _as_tuple(self.b, 2))

    def as_sequence(self) -> CoefficientSequence:
        return CoefficientSequence.periodic(self.a, self.b)


@dataclass(frozen=True)
class PeriodicCoeffs4:
    """4-periodic coefficients (a_0..a_3), (b_0..b_3)."""

    a: tuple[Fraction, Fraction, Fraction, Fraction]
    b: tuple[Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "a", _as_tuple(self.a, 4))
        object.__setattr__(self, "b", _as_tuple(self.b, 4))

    def as_sequence(self) -> CoefficientSequence:
        return CoefficientSequence.periodic(self.a, self.b)


def _as_tuple(values, size: int) -> tuple[Fraction, ...]:
    vals = tuple(as_rational(v) for v in values)
    if len(vals) != size:
        raise ValueError(f"expected {size} values, got {len(vals)}")
    return vals


def _product(
    j: int,
    n: int,
    prefix: Fraction,
    num_factor,
    den_factor,
) -> Fraction:
    """prefix * prod(num_factor(s)/den_factor(s), s < n) with singular checks."""
    value = prefix
    for s in range(n):
        den = den_factor(s)
        if den == 0:
            raise SingularClosedForm(j=j, s=s, v_index=4 * s + j + 2)
        num = num_factor(s)
        if num == 0:
            raise SingularClosedForm.from_v_index(4 * s + j)
        value *= num / den
    return value


# ---------------------------------------------------------------------------
# Constant coefficients, a != 1: geometric sums (1 - a^s)/(1 - a)
# ---------------------------------------------------------------------------

def term_const_general(
    m: int, ic: InitialConditions, cc: ConstantCoeffs
) -> Fraction:
    """x_m for constant (a, b) with a != 1.

    Per residue class, e.g.

        x_(4n-5) = g^n / c^(n-1)
                   * prod( (a^s + b*c*e*(1-a^s)/(1-a))
                         / (a^s + b*e*g*(1-a^s)/(1-a)), s < n ).
    """
    a, b = cc.a, cc.b
    if a == 1:
        raise WrongCase("constant-coefficient general form requires a != 1")
    ti = decompose_index(m)
    j, n = ti.j, ti.n
    if n == 0:
        return ic.u(j)
    c, d, e, f, g, h = ic.values

    def sigma(t: int) -> Fraction:
        return (1 - a**t) / (1 - a)

    if j == 0:
        return _product(
            j, n, g**n / c ** (n - 1),
            lambda s: a**s + b * c * e * sigma(s),
            lambda s: a**s + b * e * g * sigma(s),
        )
    if j == 1:
        return _product(
            j, n, h**n / d ** (n - 1),
            lambda s: a**s + b * d * f * sigma(s),
            lambda s: a**s + b * f * h * sigma(s),
        )
    if j == 2:
        return _product(
            j, n, c**n * e / g**n,
            lambda s: a**s + b * e * g * sigma(s),
            lambda s: a ** (s + 1) + b * c * e * sigma(s + 1),
        )
    return _product(
        j, n, d**n * f / h**n,
        lambda s: a**s + b * f * h * sigma(s),
        lambda s: a ** (s + 1) + b * d * f * sigma(s + 1),
    )


# ---------------------------------------------------------------------------
# Constant coefficients, a = -1: parity powers
# ---------------------------------------------------------------------------

def _ratio_power(
    numerator_base: Fraction,
    denominator_base: Fraction,
    num_count: int,
    den_count: int,
    num_v_index: int,
    den_v_index: int,
) -> Fraction:
    """numerator_base^num_count / denominator_base^den_count, guarded."""
    if den_count > 0 and denominator_base == 0:
        raise SingularClosedForm.from_v_index(den_v_index)
    if num_count > 0 and numerator_base == 0:
        raise SingularClosedForm.from_v_index(num_v_index)
    return numerator_base**num_count / denominator_base**den_count


def term_const_a_neg1(m: int, ic: InitialConditions, b: RationalLike) -> Fraction:
    """x_m for constant coefficients a = -1, b.

    Only factors at odd blocks differ from 1, so each class reduces to a
    single ratio power, e.g.

        x_(4n-5) = c^(1-n) * g^n * ((-1 + b*c*e)/(-1 + b*e*g))^floor(n/2)
        x_(4n-3) = c^n * e / g^n * (-1 + b*e*g)^floor(n/2)
                                 / (-1 + b*c*e)^ceil(n/2).

    Valid whenever b * x_(-5+j) * x_(-3+j) != 1 for the classes the power
    actually uses.
    """
    b = as_rational(b)
    ti = decompose_index(m)
    j, n = ti.j, ti.n
    if n == 0:
        return ic.u(j)
    c, d, e, f, g, h = ic.values
    half = n // 2
    half_up = (n + 1) // 2
    # First vanishing V per base: class 0 (-1+bce) -> V_4, class 1 (-1+bdf)
    # -> V_5, class 2 (-1+beg) -> V_6, class 3 (-1+bfh) -> V_7.
    if j == 0:
        ratio = _ratio_power(-1 + b * c * e, -1 + b * e * g, half, half, 4, 6)
        return c ** (1 - n) * g**n * ratio
    if j == 1:
        ratio = _ratio_power(-1 + b * d * f, -1 + b * f * h, half, half, 5, 7)
        return d ** (1 - n) * h**n * ratio
    if j == 2:
        ratio = _ratio_power(-1 + b * e * g, -1 + b * c * e, half, half_up, 6, 4)
        return c**n * e / g**n * ratio
    ratio = _ratio_power(-1 + b * f * h, -1 + b * d * f, half, half_up, 7, 5)
    return d**n * f / h**n * ratio


# ---------------------------------------------------------------------------
# Constant coefficients, a = 1: arithmetic progressions
# ---------------------------------------------------------------------------

def term_const_a1(m: int, ic: InitialConditions, b: RationalLike) -> Fraction:
    """x_m for constant coefficients a = 1, b.

    Per residue class, e.g.

        x_(4n-5) = g^n / c^(n-1) * prod((1 + b*c*e*s)/(1 + b*e*g*s), s < n)
        x_(4n-3) = c^n * e / g^n * prod((1 + b*e*g*s)/(1 + b*c*e*(s+1)), s < n).
    """
    b = as_rational(b)
    ti = decompose_index(m)
    j, n = ti.j, ti.n
    if n == 0:
        return ic.u(j)
    c, d, e, f, g, h = ic.values
    if j == 0:
        return _product(
            j, n, g**n / c ** (n - 1),
            lambda s: 1 + b * c * e * s,
            lambda s: 1 + b * e * g * s,
        )
    if j == 1:
        return _product(
            j, n, h**n / d ** (n - 1),
            lambda s: 1 + b * d * f * s,
            lambda s: 1 + b * f * h * s,
        )
    if j == 2:
        return _product(
            j, n, c**n * e / g**n,
            lambda s: 1 + b * e * g * s,
            lambda s: 1 + b * c * e * (s + 1),
        )
    return _product(
        j, n, d**n * f / h**n,
        lambda s: 1 + b * f * h * s,
        lambda s: 1 + b * d * f * (s + 1),
    )


# ---------------------------------------------------------------------------
# Periodic coefficients: explicit power sums
# ---------------------------------------------------------------------------

def _power_sum(a: Fraction, t: int) -> Fraction:
    """sum(a^l, l = 0..t-1), evaluated literally."""
    total = Fraction(0)
    power = Fraction(1)
    for _ in range(t):
        total += power
        power *= a
    return total


def term_periodic2(m: int, ic: InitialConditions, pc: PeriodicCoeffs2) -> Fraction:
    """x_m for 2-periodic coefficients.

    Classes x_(4n-5), x_(4n-3) only ever consume (a_0, b_0) and classes
    x_(4n-4), x_(4n-2) only (a_1, b_1), e.g.

        x_(4n-5) = g^n / c^(n-1)
                   * prod( (a_0^s + b_0*c*e*sum(a_0^l, l < s))
                         / (a_0^s + b_0*e*g*sum(a_0^l, l < s)), s < n ).
    """
    a0, a1 = pc.a
    b0, b1 = pc.b
    ti = decompose_index(m)
    j, n = ti.j, ti.n
    if n == 0:
        return ic.u(j)
    c, d, e, f, g, h = ic.values
    if j == 0:
        return _product(
            j, n, g**n / c ** (n - 1),
            lambda s: a0**s + b0 * c * e * _power_sum(a0, s),
            lambda s: a0**s + b0 * e * g * _power_sum(a0, s),
        )
    if j == 1:
        return _product(
            j, n, h**n / d ** (n - 1),
            lambda s: a1**s + b1 * d * f * _power_sum(a1, s),
            lambda s: a1**s + b1 * f * h * _power_sum(a1, s),
        )
    if j == 2:
        return _product(
            j, n, c**n * e / g**n,
            lambda s: a0**s + b0 * e * g * _power_sum(a0, s),
            lambda s: a0 ** (s + 1) + b0 * c * e * _power_sum(a0, s + 1),
        )
    return _product(
        j, n, d**n * f / h**n,
        lambda s: a1**s + b1 * f * h * _power_sum(a1, s),
        lambda s: a1 ** (s + 1) + b1 * d * f * _power_sum(a1, s + 1),
    )


def term_periodic4(m: int, ic: InitialConditions, pc: PeriodicCoeffs4) -> Fraction:
    """x_m for 4-periodic coefficients.

    Each residue class pairs its own coefficient index with the one two
    steps later, e.g.

        x_(4n-5) = g^n / c^(n-1)
                   * prod( (a_0^s + b_0*c*e*sum(a_0^l, l < s))
                         / (a_2^s + b_2*e*g*sum(a_2^l, l < s)), s < n ).
    """
    a0, a1, a2, a3 = pc.a
    b0, b1, b2, b3 = pc.b
    ti = decompose_index(m)
    j, n = ti.j, ti.n
    if n == 0:
        return ic.u(j)
    c, d, e, f, g, h = ic.values
    if j == 0:
        return _product(
            j, n, g**n / c ** (n - 1),
            lambda s: a0**s + b0 * c * e * _power_sum(a0, s),
            lambda s: a2**s + b2 * e * g * _power_sum(a2, s),
        )
    if j == 1:
        return _product(
            j, n, h**n / d ** (n - 1),
            lambda s: a1**s + b1 * d * f * _power_sum(a1, s),
            lambda s: a3**s + b3 * f * h * _power_sum(a3, s),
        )
    if j == 2:
        return _product(
            j, n, c**n * e / g**n,
            lambda s: a2**s + b2 * e * g * _power_sum(a2, s),
            lambda s: a0 ** (s + 1) + b0 * c * e * _power_sum(a0, s + 1),
        )
    return _product(
        j, n, d**n * f / h**n,
        lambda s: a3**s + b3 * f * h * _power_sum(a3, s),
        lambda s: a1 ** (s + 1) + b1 * d * f * _power_sum(a1, s + 1),
    )
