"""General closed form: V solution, term products, guard, float paths."""

import math
import random
from fractions import Fraction

import pytest

from sixrde import (
    CoefficientSequence,
    GaussianRational,
    I,
    IndexBelowSeed,
    SingularClosedForm,
    canonical_coordinate,
    gamma,
    invariant_sequence,
    iterate,
    make_initial_conditions,
    term,
    unified_constants,
    unified_exponent,
    unified_magnitude,
    v_at,
    v_closed,
    verify_gamma_identities,
    well_defined,
)

from conftest import nonsingular_instance, random_instance

ONES = make_initial_conditions([1] * 6)
TRIVIAL = CoefficientSequence.constant(1, 0)


# ---------------------------------------------------------------------------
# Phase kernel
# ---------------------------------------------------------------------------

def test_gamma_spot_values():
    assert gamma(3, 3) == GaussianRational(1)
    assert gamma(1, 0) == I
    assert gamma(0, 1) == I.conjugate()
    assert gamma(7, 2) == I  # i^5


def test_gamma_identities_hold_up_to_16():
    assert verify_gamma_identities(16) == []


def test_gamma_identity_checker_detects_breakage(monkeypatch):
    import sixrde.closedform as cf

    monkeypatch.setattr(cf, "gamma", lambda n, k: GaussianRational(1))
    assert cf.verify_gamma_identities(2) != []


# ---------------------------------------------------------------------------
# Closed form for V
# ---------------------------------------------------------------------------

def test_v_closed_block_zero_is_seed_invariant():
    ic = make_initial_conditions([2, 3, 5, 7, 11, 13])
    for j in range(4):
        assert v_closed(j, 0, ic, TRIVIAL) == 1 / ic.seed_product(j)


def test_v_closed_identity_map_is_constant():
    ic = make_initial_conditions([2, 3, 5, 7, 11, 13])
    for j in range(4):
        for n in (1, 2, 7):
            assert v_closed(j, n, ic, TRIVIAL) == v_closed(j, 0, ic, TRIVIAL)


def test_v_closed_matches_oracle_invariants():
    rng = random.Random(31)
    for _ in range(10):
        ic, coeffs, orbit = nonsingular_instance(rng, 50)
        v = invariant_sequence(orbit)
        for index in range(51):
            assert v_closed(index % 4, index // 4, ic, coeffs) == v[index]
            assert v_at(index, ic, coeffs) == v[index]


# ---------------------------------------------------------------------------
# Closed form for terms
# ---------------------------------------------------------------------------

def test_term_returns_seeds_unchanged():
    ic = make_initial_conditions([2, 3, 5, 7, 11, 13])
    for m in range(-5, 1):
        assert term(m, ic, TRIVIAL) == ic.x(m)


def test_term_telescopes_for_identity_coefficients():
    ic = make_initial_conditions([2, 3, 5, 7, 11, 13])
    c, g = ic.x(-5), ic.x(-1)
    for n in range(0, 8):
        assert term(4 * n - 5, ic, TRIVIAL) == g**n / c ** (n - 1)


def test_term_matches_oracle_on_random_instances():
    rng = random.Random(47)
    for _ in range(25):
        ic, coeffs, orbit = nonsingular_instance(rng, 45)
        for m in range(-5, 41):
            assert term(m, ic, coeffs) == orbit.x(m)


def test_term_rejects_indices_below_seed():
    with pytest.raises(IndexBelowSeed):
        term(-6, ONES, TRIVIAL)


def test_term_raises_singular_closed_form_with_position():
    # a=1, b=-1, all-ones seeds: V_4 = 0, so x_1 (class j=2, factor s=0) breaks
    coeffs = CoefficientSequence.constant(1, -1)
    with pytest.raises(SingularClosedForm) as exc:
        term(1, ONES, coeffs)
    assert (exc.value.j, exc.value.s, exc.value.v_index) == (2, 0, 4)
    assert exc.value.halt_step == 0


# ---------------------------------------------------------------------------
# Well-definedness guard
# ---------------------------------------------------------------------------

def test_well_defined_trivial_coefficients():
    report = well_defined(ONES, TRIVIAL, horizon=10)
    assert report.ok
    assert report.seeds_nonzero
    assert report.first_halt_step is None


def test_well_defined_flags_forced_violation():
    report = well_defined(ONES, CoefficientSequence.constant(1, -1), horizon=5)
    assert not report.ok
    first = report.violations[0]
    assert (first.j, first.s) == (0, 0)
    assert first.v_index == 4
    assert first.halt_step == 0


def test_well_defined_matches_oracle_halts():
    rng = random.Random(63)
    agree = halted = 0
    while halted < 25 or agree < 60:
        ic, coeffs = random_instance(rng)
        orbit = iterate(ic, coeffs, 48)
        report = well_defined(ic, coeffs, horizon=14)
        steps = [v.halt_step for v in report.violations if v.halt_step <= 47]
        if orbit.halt is None:
            assert not steps
        else:
            assert min(steps) == orbit.halt.step
            halted += 1
        agree += 1


def test_well_defined_stops_at_explicit_horizon():
    seq = CoefficientSequence.explicit([1, 1], [0, 0])
    report = well_defined(ONES, seq, horizon=10)
    assert report.ok


# ---------------------------------------------------------------------------
# Canonical coordinate and unified magnitude
# ---------------------------------------------------------------------------

def test_canonical_coordinate_values():
    ic = make_initial_conditions([1, 2, 1, 1, 1, 1])
    orbit = iterate(ic, TRIVIAL, 4)
    assert canonical_coordinate(0, orbit) == 0  # ln 1
    s1 = canonical_coordinate(1, orbit)
    assert abs(s1 - complex(0, -math.log(2))) < 1e-15  # 1/i = -i
    ic2 = make_initial_conditions([3, 1, 1, 1, 1, 1])
    orbit2 = iterate(ic2, TRIVIAL, 1)
    assert canonical_coordinate(0, orbit2) == pytest.approx(math.log(3))


def test_unified_constants_satisfy_their_equations():
    ic = make_initial_conditions([3, 7, 1, 1, 1, 1])
    consts = unified_constants(ic)
    assert consts.c1 + consts.c2 == pytest.approx(math.log(3))
    assert 1j * (consts.c1 - consts.c2) == pytest.approx(math.log(7))


def test_unified_magnitude_all_ones():
    for n in range(0, 20):
        assert unified_magnitude(n, ONES, TRIVIAL) == pytest.approx(1.0, rel=1e-12)


def test_unified_magnitude_at_zero_is_seed_magnitude():
    ic = make_initial_conditions(
        [Fraction(-3, 4), 2, 1, Fraction(5, 7), 1, 1]
    )
    assert unified_magnitude(0, ic, TRIVIAL) == pytest.approx(0.75, rel=1e-12)


def test_unified_magnitude_matches_oracle():
    rng = random.Random(91)
    for _ in range(8):
        ic, coeffs, orbit = nonsingular_instance(rng, 45)
        for n in range(0, 46):
            want = abs(float(orbit.u(n)))
            got = unified_magnitude(n, ic, coeffs)
            assert got == pytest.approx(want, rel=1e-9)
            assert abs(unified_exponent(n, ic, coeffs).imag) < 1e-12


def test_unified_magnitude_propagates_singularity():
    coeffs = CoefficientSequence.constant(1, -1)
    with pytest.raises(SingularClosedForm):
        unified_magnitude(8, ONES, coeffs)
