"""Structured subsets: boxes, progressions, Bohr sets, Fourier data."""

import cmath
import itertools
import math
from fractions import Fraction

import pytest

from ffenergy.errors import ParameterError, SideExceedsModulus
from ffenergy.ffield import make_field
from ffenergy.structsets import (
    BohrSpec,
    BoxSpec,
    ElementSet,
    GapSpec,
    enumerate_bohr,
    enumerate_box,
    enumerate_gap,
    gap_fourier,
    is_proper,
    parseval_check,
)


# ---------------------------------------------------------------------------
# oracles


def brute_gap_codes(q, spec):
    """All residues of the progression by direct tuple enumeration."""
    rng = spec.coordinate_range()
    out = []
    for tup in itertools.product(rng, repeat=spec.d):
        val = (spec.beta + sum(a * h for a, h in zip(spec.alphas, tup))) % q
        out.append(val)
    return out


def brute_fourier(q, spec, y):
    """Direct tuple summation of (1/q) * sum e((beta + sum a_i h_i) y / q)."""
    total = 0j
    for code in brute_gap_codes(q, spec):
        total += cmath.exp(2j * cmath.pi * code * y / q)
    return total / q


def circle_norm(r, q):
    """Distance of r/q to the nearest integer, as an exact Fraction."""
    r %= q
    return Fraction(min(r, q - r), q)


# ---------------------------------------------------------------------------
# ElementSet basics


def test_element_set_size_and_membership():
    s = ElementSet((1, 3, 5), 4)
    assert s.size == 3
    assert 3 in s and 2 not in s
    assert s.multiplicity_total == 4


def test_element_set_rejects_impossible_multiplicity():
    with pytest.raises(ParameterError):
        ElementSet((1, 2, 3), 2)


# ---------------------------------------------------------------------------
# boxes


def test_box_prime_field_example():
    field = make_field(7, 1)
    box = enumerate_box(field, BoxSpec(M=(0,), H=(3,)))
    assert box.elements == (1, 2, 3)
    assert box.multiplicity_total == 3


def test_box_cardinality_exhaustive():
    field = make_field(5, 2)
    for h1 in range(1, 6):
        for h2 in range(1, 6):
            for m1 in (0, 2, 4):
                box = enumerate_box(field, BoxSpec(M=(m1, 1), H=(h1, h2)))
                assert box.size == h1 * h2
                assert box.multiplicity_total == h1 * h2


def test_box_coordinates_are_the_stated_windows():
    field = make_field(5, 2)
    box = enumerate_box(field, BoxSpec(M=(3, 4), H=(3, 2)))
    # windows are M_i < h_i <= M_i + H_i reduced mod q
    expect = set()
    for h1 in range(4, 7):
        for h2 in range(5, 7):
            expect.add((h1 % 5) + 5 * (h2 % 5))
    assert set(box.elements) == expect


def test_box_side_exceeding_modulus_raises():
    field = make_field(5, 2)
    with pytest.raises(SideExceedsModulus):
        enumerate_box(field, BoxSpec(M=(0, 0), H=(6, 1)))


def test_box_wraps_modulo_q():
    field = make_field(5, 1)
    box = enumerate_box(field, BoxSpec(M=(3,), H=(4,)))
    assert set(box.elements) == {4, 0, 1, 2}


# ---------------------------------------------------------------------------
# progressions


def test_gap_examples():
    got = enumerate_gap(13, GapSpec((1, 3), 2))
    assert got.elements == (4, 5, 7, 8)
    assert got.multiplicity_total == 4
    rep = enumerate_gap(5, GapSpec((1, 1), 3))
    assert rep.size == 5 and rep.multiplicity_total == 9


def test_gap_matches_brute_force():
    for q in (7, 11, 13):
        for spec in (GapSpec((1,), 3), GapSpec((2, 5), 2, beta=4),
                     GapSpec((1, 3), 2, symmetric=True),
                     GapSpec((1, 3), 2, symmetric=True, range_bound=4)):
            got = enumerate_gap(q, spec)
            codes = brute_gap_codes(q, spec)
            assert got.elements == tuple(sorted(set(codes)))
            assert got.multiplicity_total == len(codes)


def test_gap_validation():
    with pytest.raises(ParameterError):
        GapSpec((), 2)
    with pytest.raises(ParameterError):
        GapSpec((1,), 0)
    with pytest.raises(ParameterError):
        GapSpec((1,), 2, range_bound=3)  # range_bound needs symmetric


def test_is_proper_matches_brute_force():
    for q in (11, 13, 101):
        for spec in (GapSpec((1, 10), 3, symmetric=True, range_bound=9),
                     GapSpec((1, 7), 2, symmetric=True),
                     GapSpec((1, 5), 2), GapSpec((3,), 4)):
            codes = brute_gap_codes(q, spec)
            expect = len(set(codes)) == len(codes)
            got, witness = is_proper(q, spec)
            assert got == expect
            if not got:
                t1, t2 = witness
                v1 = sum(a * h for a, h in zip(spec.alphas, t1)) % q
                v2 = sum(a * h for a, h in zip(spec.alphas, t2)) % q
                assert t1 != t2 and v1 == v2


def test_is_proper_frozen_example():
    ok, witness = is_proper(101, GapSpec((1, 10), 3, symmetric=True,
                                         range_bound=9))
    assert not ok
    assert witness is not None


# ---------------------------------------------------------------------------
# Bohr sets


def test_bohr_small_example():
    got = enumerate_bohr(7, BohrSpec(alphas=(1,), eps=(Fraction(1, 5),)))
    assert got.elements == (1, 6)


def test_bohr_matches_exact_definition():
    for q in (7, 11, 101):
        for alphas in ((1,), (2, 3)):
            for eps_num in (1, 2, 3):
                eps = (Fraction(eps_num, 7),) * len(alphas)
                spec = BohrSpec(alphas=alphas, eps=eps)
                got = enumerate_bohr(q, spec)
                expect = [x for x in range(1, q)
                          if all(circle_norm(a * x, q) <= e
                                 for a, e in zip(alphas, eps))]
                assert list(got.elements) == expect


def test_bohr_symmetry_x_and_q_minus_x():
    for q in (11, 31, 101):
        spec = BohrSpec(alphas=(1, 4), eps=(Fraction(1, 4), Fraction(1, 3)))
        got = set(enumerate_bohr(q, spec).elements)
        assert got == {(q - x) % q for x in got}


def test_bohr_monotone_in_eps():
    q = 101
    prev = set()
    for k in range(1, 8):
        spec = BohrSpec(alphas=(3,), eps=(Fraction(k, 14),))
        cur = set(enumerate_bohr(q, spec).elements)
        assert prev <= cur
        prev = cur
    # eps = 1/2 admits every nonzero residue
    full = enumerate_bohr(q, BohrSpec(alphas=(3,), eps=(Fraction(1, 2),)))
    assert full.size == q - 1


def test_bohr_spec_validation():
    with pytest.raises(ParameterError):
        BohrSpec(alphas=(1,), eps=(Fraction(3, 5),))
    with pytest.raises(ParameterError):
        BohrSpec(alphas=(1,), eps=(Fraction(0),))
    with pytest.raises(ParameterError):
        BohrSpec(alphas=(1, 2), eps=(Fraction(1, 4),))


# ---------------------------------------------------------------------------
# Fourier coefficients


def test_fourier_matches_direct_summation():
    for q in (7, 13):
        for spec in (GapSpec((1,), 3), GapSpec((2, 3), 2, beta=5),
                     GapSpec((1,), 7)):
            for y in range(q):
                rep = gap_fourier(q, spec, y)
                oracle = brute_fourier(q, spec, y)
                assert abs(rep.value - oracle) < 1e-12


def test_fourier_frozen_values():
    # y = 0 gives mass/q; a full interval kills every nonzero frequency.
    spec = GapSpec((1,), 3)
    assert abs(gap_fourier(7, spec, 0).value - 3 / 7) < 1e-15
    mag = gap_fourier(7, spec, 1).magnitude
    assert abs(mag - math.sin(3 * math.pi / 7) /
               (7 * math.sin(math.pi / 7))) < 1e-12
    assert abs(mag - 0.3209970862453524) < 1e-12
    full = GapSpec((1,), 7)
    assert abs(gap_fourier(7, full, 1).value) < 1e-15


def test_fourier_certificate_at_most_one():
    for q in (7, 101):
        for spec in (GapSpec((1,), 3), GapSpec((1, 9), 2, beta=1)):
            for y in range(1, q):
                rep = gap_fourier(q, spec, y)
                assert rep.certificate <= 1 + 1e-12
                assert rep.magnitude <= rep.bound_product + 1e-12


def test_parseval_identity():
    for q in (7, 13, 101):
        for spec in (GapSpec((1,), 3), GapSpec((2, 3), 2, beta=5),
                     GapSpec((1, 10), 3)):
            lhs, rhs, ok = parseval_check(q, spec)
            assert ok
            assert abs(lhs - rhs) < 1e-9


def test_parseval_rhs_is_exact_mass():
    q = 13
    spec = GapSpec((1, 1), 2)  # collisions: multiplicities matter
    _, rhs, ok = parseval_check(q, spec)
    codes = brute_gap_codes(q, spec)
    hist = {}
    for c in codes:
        hist[c] = hist.get(c, 0) + 1
    assert ok
    assert abs(rhs - sum(m * m for m in hist.values()) / q) < 1e-15
