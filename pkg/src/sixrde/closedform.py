"""General closed-form solution of the order-six product recurrence.

The recurrence conserves V_n = 1/(u_n * u_(n+2)) up to an affine step:
V_(n+4) = a_n * V_n + b_n.  Solving that first-order affine recurrence on
each residue class mod 4 gives

    V_(4n+j) = V_j * prod(a_(4k+j), k < n)
               + sum(b_(4l+j) * prod(a_(4k+j), l < k < n), l < n)

with V_j = 1/(u_j * u_(j+2)) from the seeds, and every orbit term follows by
telescoping:

    u_(4n+j) = u_j * prod(V_(4s+j) / V_(4s+j+2), s < n),   j = 0..3.

A vanishing V in a denominator is exactly the well-definedness failure of
the closed form, and corresponds one-to-one with the direct iteration
hitting a zero denominator (at step v_index - 4).

There is also a unified magnitude formula over the complex unit i:

    |u_n| = exp( i^n c1 + (-i)^n c2 + sum(Re[i^(n-k)] * ln|V_k|, k < n) )

with c1 + c2 = ln|u_0| and i*(c1 - c2) = ln|u_1|.  That path recovers
magnitudes only (in floating point); signs live on the exact path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    CoefficientSequence,
    GaussianRational,
    InitialConditions,
    OutOfHorizon,
    OutOfRange,
    SingularClosedForm,
    decompose_index,
    i_power,
    log_abs,
)
from .oracle import Orbit

__all__ = [
    "gamma",
    "verify_gamma_identities",
    "v_closed",
    "v_at",
    "term",
    "WellDefViolation",
    "WellDefinednessReport",
    "well_defined",
    "canonical_coordinate",
    "UnifiedConstants",
    "unified_constants",
    "unified_exponent",
    "unified_magnitude",
]

_I_COMPLEX = (1 + 0j, 1j, -1 + 0j, -1j)


def _complex_i_power(k: int) -> complex:
    return _I_COMPLEX[k % 4]


# ---------------------------------------------------------------------------
# The phase kernel
# ---------------------------------------------------------------------------

def gamma(n: int, k: int) -> GaussianRational:
    """The phase kernel i^n * (-i)^k = i^(n-k), exact."""
    return i_power(n - k)


def verify_gamma_identities(limit: int) -> list[str]:
    """Check all seven structural identities of the phase kernel.

    Returns a list of human-readable failures (empty when everything holds)
    for all n, k in 0..limit.
    """
    failures = []
    one = GaussianRational(1)
    if gamma(0, 1) != i_power(-1):
        failures.append("gamma(0,1) != conj(i)")
    if gamma(1, 0) != i_power(1):
        failures.append("gamma(1,0) != i")
    for n in range(limit + 1):
        for k in range(limit + 1):
            g = gamma(n, k)
            if n == k and g != one:
                failures.append(f"gamma({n},{n}) != 1")
            if gamma(n + 2, k) != -g:
                failures.append(f"gamma({n}+2,{k}) != -gamma({n},{k})")
            if gamma(n, k + 2) != -g:
                failures.append(f"gamma({n},{k}+2) != -gamma({n},{k})")
            if gamma(4 * n, k) != gamma(0, k):
                failures.append(f"gamma(4*{n},{k}) != gamma(0,{k})")
            if gamma(n, 4 * k) != gamma(n, 0):
                failures.append(f"gamma({n},4*{k}) != gamma({n},0)")
    return failures


# ---------------------------------------------------------------------------
# Closed form for the invariant
# ---------------------------------------------------------------------------

def v_closed(
    j: int, n: int, ic: InitialConditions, coeffs: CoefficientSequence
) -> Fraction:
    """V_(4n+j) by the explicit product/sum solution of the affine step.

    Empty products are 1 and empty sums are 0, so n = 0 returns the seed
    invariant V_j = 1/(u_j * u_(j+2)).
    """
    if not 0 <= j <= 3:
        raise OutOfRange("residue class", j)
    if n < 0:
        raise OutOfRange("block index", n)
    v_seed = 1 / ic.seed_product(j)
    full = Fraction(1)
    for k1 in range(n):
        full *= coeffs.a_at(4 * k1 + j)
    acc = v_seed * full
    for l in range(n):
        tail = Fraction(1)
        for k2 in range(l + 1, n):
            tail *= coeffs.a_at(4 * k2 + j)
        acc += coeffs.b_at(4 * l + j) * tail
    return acc


def _v_values(
    j: int, count: int, ic: InitialConditions, coeffs: CoefficientSequence
) -> list[Fraction]:
    """V_(4t+j) for t = 0..count-1 via running product/sum accumulators.

    Transparent evaluation of the same product/sum expression as `v_closed`
    (the tail sum telescopes), at O(1) work per block.
    """
    v_seed = 1 / ic.seed_product(j)
    out = [v_seed]
    prod = Fraction(1)
    tail = Fraction(0)
    for t in range(1, count):
        a = coeffs.a_at(4 * (t - 1) + j)
        b = coeffs.b_at(4 * (t - 1) + j)
        prod *= a
        tail = tail * a + b
        out.append(v_seed * prod + tail)
    return out


def v_at(index: int, ic: InitialConditions, coeffs: CoefficientSequence) -> Fraction:
    """V at an arbitrary index >= 0, dispatching on its residue class."""
    if index < 0:
        raise OutOfRange("invariant index", index)
    return v_closed(index % 4, index // 4, ic, coeffs)


# ---------------------------------------------------------------------------
# Closed form for orbit terms
# ---------------------------------------------------------------------------

def term(m: int, ic: InitialConditions, coeffs: CoefficientSequence) -> Fraction:
    """Exact x_m from the telescoping product of closed-form V values.

    Raises `SingularClosedForm` when a required V vanishes; that happens
    iff direct iteration halts on a zero denominator at step v_index - 4.
    """
    ti = decompose_index(m)
    j, n = ti.j, ti.n
    if n == 0:
        return ic.u(j)
    # Numerators are class j at blocks 0..n-1.  Denominators are V_(4s+j+2):
    # class j+2 at blocks 0..n-1 for j in {0,1}, class j-2 at blocks 1..n
    # for j in {2,3}.
    nums = _v_values(j, n, ic, coeffs)
    if j <= 1:
        dens = _v_values(j + 2, n, ic, coeffs)
    else:
        dens = _v_values(j - 2, n + 1, ic, coeffs)[1:]
    value = ic.u(j)
    for s in range(n):
        if dens[s] == 0:
            raise SingularClosedForm(j=j, s=s, v_index=4 * s + j + 2)
        if nums[s] == 0:
            # A zero numerator V means the orbit already died on the class
            # where this V sits in a denominator; report it canonically.
            raise SingularClosedForm.from_v_index(4 * s + j)
        value *= nums[s] / dens[s]
    return value


# ---------------------------------------------------------------------------
# Well-definedness guard
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WellDefViolation:
    """One failed well-definedness inequality.

    `j` is the residue class of the vanishing V, `s` the block parameter of
    the inequality, `v_index` the index of the vanishing V, and `halt_step`
    the iteration step at which direct iteration hits the matching zero
    denominator (always v_index - 4).
    """

    j: int
    s: int
    v_index: int

    @property
    def halt_step(self) -> int:
        return self.v_index - 4


@dataclass(frozen=True)
class WellDefinednessReport:
    horizon: int
    violations: tuple[WellDefViolation, ...]
    seeds_nonzero: bool = True

    @property
    def ok(self) -> bool:
        return self.seeds_nonzero and not self.violations

    @property
    def first_halt_step(self) -> "int | None":
        if not self.violations:
            return None
        return min(v.halt_step for v in self.violations)


def well_defined(
    ic: InitialConditions, coeffs: CoefficientSequence, horizon: int
) -> WellDefinednessReport:
    """Check every closed-form denominator inequality up to `horizon`.

    For offset i = 0 with j in {0,1} and i = 1 with j in {2,3}, and every
    s <= horizon, the guard requires

        -u_j * u_(j+2) * sum(b_(4l+j) * prod(a_(4k+j), l < k <= s-i), l <= s-i)
            != prod(a_(4k+j), k <= s-i),

    i.e. u_j*u_(j+2)*V_(4(s-i+1)+j) != 0.  Violations are data, not errors;
    each one pinpoints the iteration step where the orbit must die.  The six
    nonzero-seed requirement (already enforced at construction) is reported
    alongside.  For explicit coefficient lists the scan of a class stops
    where the coefficients run out.
    """
    if horizon < 0:
        raise ValueError(f"horizon must be >= 0, got {horizon}")
    violations = []
    for j in range(4):
        i_off = 0 if j <= 1 else 1
        seed_prod = ic.seed_product(j)
        prod = Fraction(1)
        tail = Fraction(0)
        # upper = s - i_off runs 0, 1, ... ; upper < 0 cases are the trivial
        # 0 != 1 inequalities and cannot fail.
        for upper in range(0, horizon - i_off + 1):
            try:
                a = coeffs.a_at(4 * upper + j)
                b = coeffs.b_at(4 * upper + j)
            except OutOfHorizon:
                break
            prod *= a
            tail = tail * a + b
            if -seed_prod * tail == prod:
                s = upper + i_off
                violations.append(
                    WellDefViolation(j=j, s=s, v_index=4 * (upper + 1) + j)
                )
    violations.sort(key=lambda v: (v.halt_step, v.j, v.s))
    return WellDefinednessReport(
        horizon=horizon, violations=tuple(violations), seeds_nonzero=True
    )


# ---------------------------------------------------------------------------
# Canonical coordinate and unified magnitude (floating point)
# ---------------------------------------------------------------------------

def canonical_coordinate(n: int, orbit: Orbit) -> complex:
    """S_n = i^(-n) * ln|u_n| in complex floating point."""
    if n < 0:
        raise OutOfRange("orbit term u", n)
    return _complex_i_power(-n) * log_abs(orbit.u(n))


@dataclass(frozen=True)
class UnifiedConstants:
    """Integration constants of the unified magnitude formula.

    They satisfy c1 + c2 = ln|u_0| and i*(c1 - c2) = ln|u_1|, hence are
    complex conjugates of each other.
    """

    c1: complex
    c2: complex


def unified_constants(ic: InitialConditions) -> UnifiedConstants:
    ln_u0 = log_abs(ic.u(0))
    ln_u1 = log_abs(ic.u(1))
    return UnifiedConstants(
        c1=complex(ln_u0 / 2.0, -ln_u1 / 2.0),
        c2=complex(ln_u0 / 2.0, ln_u1 / 2.0),
    )


def unified_exponent(
    n: int, ic: InitialConditions, coeffs: CoefficientSequence
) -> complex:
    """The full exponent i^n c1 + (-i)^n c2 + sum(Re[gamma(n,k)] ln|V_k|).

    The expression is real up to rounding; callers may assert a negligible
    imaginary part.  Raises `SingularClosedForm` if some V_k with k < n
    vanishes.
    """
    if n < 0:
        raise OutOfRange("orbit term u", n)
    consts = unified_constants(ic)
    total = _complex_i_power(n) * consts.c1 + _complex_i_power(-n) * consts.c2
    if n > 0:
        blocks = (n + 3) // 4
        per_class = [
            _v_values(j, blocks + 1, ic, coeffs) for j in range(4)
        ]
        for k in range(n):
            re_gamma = gamma(n, k).real
            v_k = per_class[k % 4][k // 4]
            if v_k == 0:
                raise SingularClosedForm.from_v_index(k)
            if re_gamma != 0:
                total += float(re_gamma) * log_abs(v_k)
    return total


def unified_magnitude(
    n: int, ic: InitialConditions, coeffs: CoefficientSequence
) -> float:
    """|u_n| = |x_(n-5)| from the unified exponential formula (float path)."""
    return math.exp(unified_exponent(n, ic, coeffs).real)
