"""Multiplicative energy against brute-force quadruple counting."""

import math
import random

import pytest

from ffenergy.errors import InternalError, ParameterError
from ffenergy.ffield import decode, encode, ff_mul, make_field, unit_codes
from ffenergy.structsets import ElementSet, GapSpec, enumerate_gap
from ffenergy.energy import (
    energy_translate,
    mixed_energy,
    mult_energy,
    product_set,
)


# ---------------------------------------------------------------------------
# oracles


def brute_energy(field, codes):
    """Count quadruples (a, b, c, d) with ab = cd by direct enumeration."""
    elems = [decode(field, c) for c in codes]
    count = 0
    for a in elems:
        for b in elems:
            ab = ff_mul(field, a, b)
            for c in elems:
                for d in elems:
                    if ff_mul(field, c, d) == ab:
                        count += 1
    return count


def brute_mixed(q, a_codes, b_codes):
    count = 0
    for a1 in a_codes:
        for b1 in b_codes:
            for a2 in a_codes:
                for b2 in b_codes:
                    if (a1 * b1 - a2 * b2) % q == 0:
                        count += 1
    return count


def subgroup_codes(field, d):
    """The subgroup {x : x^d = 1} of the unit group (d divides q-1)."""
    q = field.q
    return tuple(x for x in range(1, q) if pow(x, d, q) == 1)


def eset(codes):
    codes = tuple(sorted(set(codes)))
    return ElementSet(codes, len(codes))


# ---------------------------------------------------------------------------
# frozen example and oracle agreement


def test_frozen_example_f7():
    field = make_field(7, 1)
    rep = mult_energy(field, eset((1, 2, 3)))
    assert rep.E == 19
    assert rep.r_hist == {1: 1, 2: 3, 3: 2, 4: 1, 6: 2}
    assert rep.I_hist == {1: 3, 2: 1, 3: 2, 4: 1, 5: 2}
    assert rep.zero_count == 0
    assert rep.set_size == 3


def test_energy_matches_brute_force():
    rng = random.Random(5)
    for q, n in [(5, 1), (7, 1), (3, 2), (5, 2)]:
        field = make_field(q, n)
        for trial in range(8):
            size = rng.randrange(1, 7)
            codes = rng.sample(range(field.size), size)
            rep = mult_energy(field, eset(codes))
            assert rep.E == brute_energy(field, codes)


def test_energy_with_zero_element():
    field = make_field(5, 1)
    rep = mult_energy(field, eset((0, 1, 2)))
    assert rep.E == brute_energy(field, (0, 1, 2))
    # 0*x and x*0 over a 3-element set containing 0: 2*3 - 1 pairs
    assert rep.zero_count == 5
    assert rep.I_hist is None


def test_ratio_histogram_consistency():
    # I(1) = |A| and sum I(z)^2 = E whenever 0 is not in the set.
    field = make_field(11, 1)
    rep = mult_energy(field, eset((1, 3, 4, 5, 9)))
    assert rep.I_hist[1] == 5
    assert sum(v * v for v in rep.I_hist.values()) == rep.E
    assert sum(rep.I_hist.values()) == 25


# ---------------------------------------------------------------------------
# exact identities


def test_unit_group_energy_identity():
    for q in (5, 7, 11, 13, 17):
        field = make_field(q, 1)
        rep = mult_energy(field, eset(unit_codes(field)))
        assert rep.E == (q - 1) ** 3


def test_full_field_energy_identity():
    for q, n in [(5, 1), (7, 1), (3, 2)]:
        field = make_field(q, n)
        N = field.size
        rep = mult_energy(field, eset(range(N)))
        assert rep.E == (2 * N - 1) ** 2 + (N - 1) ** 3


def test_subgroup_energy_identity():
    for q in (5, 7, 11, 13, 17, 19, 23, 29, 31):
        field = make_field(q, 1)
        for d in range(1, q):
            if (q - 1) % d:
                continue
            codes = subgroup_codes(field, d)
            assert len(codes) == d
            rep = mult_energy(field, eset(codes))
            assert rep.E == d ** 3


def test_energy_lower_bound_and_dilation_invariance():
    field = make_field(13, 1)
    base = (1, 2, 5, 11)
    rep = mult_energy(field, eset(base))
    k = len(base)
    assert rep.E >= 2 * k * k - k
    for c in range(1, 13):
        dil = tuple(c * x % 13 for x in base)
        assert mult_energy(field, eset(dil)).E == rep.E


def test_extension_field_dilation_invariance():
    field = make_field(3, 2)
    base = (1, 2, 5, 7)
    ref = mult_energy(field, eset(base)).E
    for c_code in range(1, field.size):
        c = decode(field, c_code)
        dil = tuple(encode(field, ff_mul(field, c, decode(field, x)))
                    for x in base)
        assert mult_energy(field, eset(dil)).E == ref


# ---------------------------------------------------------------------------
# mixed energy


def test_mixed_energy_matches_brute_force():
    rng = random.Random(9)
    for q in (5, 7, 11):
        for _ in range(6):
            a = rng.sample(range(q), rng.randrange(1, 5))
            b = rng.sample(range(q), rng.randrange(1, 5))
            got = mixed_energy(q, eset(a), eset(b))
            assert got.value == brute_mixed(q, sorted(set(a)), sorted(set(b)))


def test_mixed_energy_frozen_values():
    units = eset(range(1, 5))
    assert mixed_energy(5, units, units).value == 64
    assert mixed_energy(7, eset((1, 2, 3)), eset((1,))).value == 3


def test_mixed_energy_agrees_with_plain_energy_on_units():
    for q in (5, 7, 11):
        field = make_field(q, 1)
        units = eset(unit_codes(field))
        assert mixed_energy(q, units, units).value == \
            mult_energy(field, units).E


# ---------------------------------------------------------------------------
# product sets and the Cauchy-Schwarz certificate


def test_product_set_frozen_examples():
    field = make_field(7, 1)
    rep = product_set(field, eset((1, 2, 4)))
    assert rep.size == 3 and rep.energy == 27
    rep2 = product_set(field, eset((1, 2, 3)))
    assert rep2.size == 5
    assert rep2.certified


def test_product_set_certificate_random_sets():
    rng = random.Random(21)
    for q, n in [(7, 1), (13, 1), (3, 2)]:
        field = make_field(q, n)
        for _ in range(10):
            codes = rng.sample(range(field.size), rng.randrange(1, 8))
            rep = product_set(field, eset(codes))
            assert rep.certified
            assert rep.size * rep.energy >= rep.set_size ** 4
            # direct product set oracle
            elems = [decode(field, c) for c in sorted(set(codes))]
            prods = {encode(field, ff_mul(field, a, b))
                     for a in elems for b in elems}
            assert rep.size == len(prods)


# ---------------------------------------------------------------------------
# translated progressions


def test_energy_translate_all_offsets():
    for q, alphas, H in [(11, (1,), 2), (13, (1, 3), 2)]:
        for beta in range(q):
            rep = energy_translate(q, GapSpec(alphas, H), beta)
            assert rep.ok
            assert rep.e_translated <= rep.e_symmetric + rep.set_size ** 2


def test_energy_translate_matches_direct_energy():
    q, alphas, H, beta = 11, (1, 3), 2, 5
    field = make_field(q, 1)
    rep = energy_translate(q, GapSpec(alphas, H), beta)
    translated = enumerate_gap(q, GapSpec(alphas, H, beta=beta))
    assert rep.e_translated == mult_energy(field, translated).E
    centered = enumerate_gap(q, GapSpec(alphas, H, symmetric=True))
    assert rep.e_symmetric == mult_energy(field, centered).E
