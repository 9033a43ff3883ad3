"""Exact integer/rational linear algebra helpers."""

import random
from fractions import Fraction

import pytest

from ffenergy._linalg import (
    IndependenceTracker,
    det_bareiss,
    frac_inv,
    frac_solve,
    mat_inv_mod,
    mat_mul_mod,
    mat_vec_mod,
)


def naive_det(mat):
    """Cofactor expansion; the independent oracle for det_bareiss."""
    m = len(mat)
    if m == 1:
        return mat[0][0]
    total = 0
    for j in range(m):
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        sign = -1 if j % 2 else 1
        total += sign * mat[0][j] * naive_det(minor)
    return total


def test_det_matches_cofactor_expansion():
    rng = random.Random(7)
    for dim in (1, 2, 3, 4):
        for _ in range(40):
            mat = tuple(tuple(rng.randrange(-9, 10) for _ in range(dim))
                        for _ in range(dim))
            assert det_bareiss(mat) == naive_det([list(r) for r in mat])


def test_det_known_values():
    assert det_bareiss(((2,),)) == 2
    assert det_bareiss(((1, 2), (3, 4))) == -2
    assert det_bareiss(((1, 0, 0), (0, 1, 0), (0, 0, 1))) == 1
    assert det_bareiss(((1, 2), (2, 4))) == 0


def test_mat_vec_and_mul_mod():
    mat = ((1, 2), (3, 4))
    assert mat_vec_mod(mat, (1, 1), 5) == (3, 2)
    prod = mat_mul_mod(mat, mat, 5)
    # (1 2; 3 4)^2 = (7 10; 15 22) == (2 0; 0 2) mod 5
    assert prod == ((2, 0), (0, 2))


def test_mat_inv_mod_round_trip():
    rng = random.Random(11)
    for q in (2, 3, 5, 7):
        for dim in (1, 2, 3):
            found = 0
            while found < 10:
                mat = tuple(tuple(rng.randrange(q) for _ in range(dim))
                            for _ in range(dim))
                if det_bareiss(mat) % q == 0:
                    continue
                found += 1
                inv = mat_inv_mod(mat, q)
                ident = tuple(tuple(1 if i == j else 0 for j in range(dim))
                              for i in range(dim))
                assert mat_mul_mod(mat, inv, q) == ident
                assert mat_mul_mod(inv, mat, q) == ident


def test_mat_inv_mod_singular_returns_none():
    assert mat_inv_mod(((1, 2), (2, 4)), 5) is None
    assert mat_inv_mod(((0,),), 7) is None


def test_frac_inv_round_trip():
    mat = ((1, 2), (3, 4))
    inv = frac_inv(mat)
    for i in range(2):
        for j in range(2):
            acc = sum(Fraction(mat[i][k]) * inv[k][j] for k in range(2))
            assert acc == (1 if i == j else 0)


def test_frac_solve_known_system():
    # x + 2y = 5, 3x + 4y = 6 -> x = -4, y = 9/2
    sol = frac_solve(((1, 2), (3, 4)), (5, 6))
    assert sol == (Fraction(-4), Fraction(9, 2))


def test_frac_solve_random_round_trip():
    rng = random.Random(13)
    for dim in (1, 2, 3, 4):
        done = 0
        while done < 15:
            mat = tuple(tuple(rng.randrange(-5, 6) for _ in range(dim))
                        for _ in range(dim))
            if det_bareiss(mat) == 0:
                continue
            done += 1
            rhs = tuple(rng.randrange(-5, 6) for _ in range(dim))
            sol = frac_solve(mat, rhs)
            for i in range(dim):
                acc = sum(Fraction(mat[i][k]) * sol[k] for k in range(dim))
                assert acc == rhs[i]


def test_independence_tracker_greedy():
    trk = IndependenceTracker(3)
    assert trk.try_add((1, 0, 0))
    assert not trk.try_add((2, 0, 0))
    assert trk.try_add((1, 1, 0))
    assert not trk.try_add((3, 5, 0))
    assert trk.try_add((0, 0, 7))
    assert not trk.try_add((1, 2, 3))


def test_independence_tracker_rejects_zero():
    trk = IndependenceTracker(2)
    assert not trk.try_add((0, 0))
    assert trk.try_add((0, 5))
