"""Small kernel vectors against exhaustive search."""

import itertools

import pytest

from ffenergy.errors import ParameterError
from ffenergy.siegel import (
    gram_det,
    iroot,
    make_instance,
    seeded_instances,
    siegel_solve,
)


# ---------------------------------------------------------------------------
# oracles


def brute_best(A, radius):
    """Lex-least kernel vector of minimal sup-norm within the window."""
    M = len(A[0])
    best = None
    for t in itertools.product(range(-radius, radius + 1), repeat=M):
        if not any(t):
            continue
        if any(sum(a * x for a, x in zip(row, t)) for row in A):
            continue
        key = (max(abs(x) for x in t), t)
        if best is None or key < best:
            best = key
    return None if best is None else best[1]


def naive_gram_det(A):
    # 1x1 and 2x2 Gram determinants by the textbook formulas
    if len(A) == 1:
        return sum(x * x for x in A[0])
    (a, b) = A
    aa = sum(x * x for x in a)
    bb = sum(x * x for x in b)
    ab = sum(x * y for x, y in zip(a, b))
    return abs(aa * bb - ab * ab)


# ---------------------------------------------------------------------------
# integer roots and Gram determinants


def test_iroot_exact_floor():
    assert iroot(0, 3) == 0
    assert iroot(1, 5) == 1
    assert iroot(5, 2) == 2
    assert iroot(8, 3) == 2
    assert iroot(7, 3) == 1
    for x in range(200):
        for k in (1, 2, 3, 4):
            r = iroot(x, k)
            assert r ** k <= x < (r + 1) ** k
    with pytest.raises(ParameterError):
        iroot(-1, 2)
    with pytest.raises(ParameterError):
        iroot(4, 0)


def test_gram_det_known_and_oracle():
    assert gram_det([[1, 2]]) == 5
    assert gram_det([[1, 1]]) == 2
    assert gram_det([[1, 1, 1], [0, 1, 2]]) == 6
    assert gram_det([[2, 4]]) == 20
    for A in ([[3, -1, 2]], [[1, 0, 2], [0, 1, -1]], [[1, 2], [2, 4]]):
        assert gram_det(A) == naive_gram_det(A)
    with pytest.raises(ParameterError):
        gram_det([[1], [2]])
    with pytest.raises(ParameterError):
        gram_det([])
    with pytest.raises(ParameterError):
        gram_det([[1, 2], [3]])


def test_make_instance_bound():
    inst = make_instance([[1, 2]])
    assert inst.shape == (1, 2)
    assert inst.gram_det == 5
    assert inst.bound == 2
    assert make_instance([[1, 1, 1], [0, 1, 2]]).bound == iroot(6, 2)
    # dependent rows: Gram determinant 0, no certified radius
    assert make_instance([[1, 2, 3], [2, 4, 6]]).bound is None
    with pytest.raises(ParameterError):
        make_instance([[1, 2], [3, 4]])


# ---------------------------------------------------------------------------
# solver


def test_known_solutions():
    assert siegel_solve([[1, 1]]) == (-1, 1)
    assert siegel_solve([[1, 2]]) == (-2, 1)
    assert siegel_solve([[1, 1, 1], [0, 1, 2]]) == (-1, 2, -1)
    # common factors are stripped from the kernel generator
    assert siegel_solve([[2, 4]]) == (-2, 1)
    assert siegel_solve([[3, 6]]) == (-2, 1)


def test_rank_zero_matrix():
    assert siegel_solve([[0, 0, 0]]) == (-1, -1, -1)
    assert siegel_solve([[0, 0, 0], [0, 0, 0]]) == (-1, -1, -1)


def test_dimension_checks():
    siegel_solve([[1, 2]], L=1, M=2)
    with pytest.raises(ParameterError):
        siegel_solve([[1, 2]], L=2)
    with pytest.raises(ParameterError):
        siegel_solve([[1, 2]], M=3)


def test_solution_matches_exhaustive_minimum():
    cases = [
        [[1, 2]],
        [[1, 1, 1], [0, 1, 2]],
        [[2, -3, 1]],
        [[1, 0, 2], [0, 1, -1]],
        [[5, 3, -2]],
        [[1, 4, 2, -3]],
        [[1, 2, 3], [4, 5, 6]],
    ]
    for A in cases:
        t = siegel_solve(A)
        sup = max(abs(x) for x in t)
        assert t == brute_best(A, sup)


def test_seeded_instances_deterministic_and_certified():
    batch = seeded_instances(200, seed=7)
    again = seeded_instances(200, seed=7)
    assert [inst.A for inst in batch] == [inst.A for inst in again]
    for inst in batch:
        t = siegel_solve(inst.A)
        assert any(t)
        for row in inst.A:
            assert sum(a * x for a, x in zip(row, t)) == 0
        assert max(abs(x) for x in t) <= inst.bound


def test_seeded_instances_small_cases_are_minimal():
    for inst in seeded_instances(60, seed=12, max_cols=3, entry_bound=3):
        t = siegel_solve(inst.A)
        sup = max(abs(x) for x in t)
        assert t == brute_best(inst.A, sup)
