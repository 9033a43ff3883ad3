"""Small integral solutions of underdetermined linear systems.

For an L x M integer matrix A with L < M, a nonzero integer vector t
with A t = 0 exists whose sup-norm is at most det(A A^t)^(1/(2(M-L))).
The solver treats that bound as a hard certificate: it eliminates A to
pivot form, enumerates only the free columns, lifts pivot coordinates
through an exact adjugate divisibility test, and returns the
lexicographically least solution of minimal sup-norm.  When the kernel
is one-dimensional the primitive kernel vector is read off from maximal
minors directly and no search runs at all.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from ._linalg import det_bareiss, frac_inv
from .errors import BudgetExceeded, InternalError, ParameterError

__all__ = [
    "SiegelInstance",
    "make_instance",
    "gram_det",
    "iroot",
    "siegel_solve",
    "seeded_instances",
]

SEARCH_BUDGET = 10 ** 9


def _as_matrix(A) -> tuple[tuple[int, ...], ...]:
    rows = tuple(tuple(int(x) for x in row) for row in A)
    if not rows or not rows[0]:
        raise ParameterError("matrix must be nonempty")
    if any(len(r) != len(rows[0]) for r in rows):
        raise ParameterError("rows must have equal length")
    return rows


def gram_det(A) -> int:
    """Exact |det(A A^t)| by fraction-free elimination."""
    rows = _as_matrix(A)
    if len(rows) > len(rows[0]):
        raise ParameterError("need at least as many columns as rows")
    gram = tuple(
        tuple(sum(a * b for a, b in zip(r1, r2)) for r2 in rows)
        for r1 in rows
    )
    return abs(det_bareiss(gram))


def iroot(x: int, k: int) -> int:
    """floor(x ** (1/k)) exactly."""
    if x < 0 or k < 1:
        raise ParameterError("iroot needs x >= 0, k >= 1")
    if x == 0:
        return 0
    r = max(1, int(round(x ** (1.0 / k))))
    while r ** k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


@dataclass(frozen=True)
class SiegelInstance:
    """Matrix with its Gram determinant and guaranteed search radius."""

    A: tuple[tuple[int, ...], ...]
    gram_det: int
    bound: int | None

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.A), len(self.A[0])


def make_instance(A) -> SiegelInstance:
    rows = _as_matrix(A)
    L, M = len(rows), len(rows[0])
    if L >= M:
        raise ParameterError(f"need more columns than rows, got {L}x{M}")
    g = gram_det(rows)
    bound = iroot(g, 2 * (M - L)) if g > 0 else None
    return SiegelInstance(A=rows, gram_det=g, bound=bound)


def _pivot_decomposition(rows):
    """Row-reduce over Q; return (pivot column list, independent row list)."""
    L, M = len(rows), len(rows[0])
    work = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    used: list[int] = []
    r = 0
    for col in range(M):
        sel = next((i for i in range(r, L) if work[i][col] != 0), None)
        if sel is None:
            continue
        work[r], work[sel] = work[sel], work[r]
        lead = work[r][col]
        for i in range(L):
            if i != r and work[i][col] != 0:
                f = work[i][col] / lead
                for j in range(col, M):
                    work[i][j] -= f * work[r][j]
        pivots.append(col)
        r += 1
        if r == L:
            break
    # recover which original rows are independent: eliminate again rowwise
    probe = [[Fraction(x) for x in row] for row in rows]
    basis: list[list[Fraction]] = []
    for idx, row in enumerate(probe):
        vec = row[:]
        for bidx, brow in enumerate(basis):
            lead_col = next(j for j, x in enumerate(brow) if x != 0)
            if vec[lead_col] != 0:
                f = vec[lead_col] / brow[lead_col]
                vec = [a - f * b for a, b in zip(vec, brow)]
        if any(x != 0 for x in vec):
            basis.append(vec)
            used.append(idx)
    return pivots, used


def _primitive_kernel_vector(rows, pivots, used) -> tuple[int, ...]:
    """Kernel generator via maximal minors when the kernel has rank one."""
    M = len(rows[0])
    r = len(pivots)
    sub = [rows[i] for i in used]
    cols = pivots + [c for c in range(M) if c not in pivots]
    # Cramer: t_j = (-1)^j det(sub without column j) over the r+1 relevant
    # columns; other coordinates vanish.
    active = sorted(cols[: r + 1])
    vec = [0] * M
    sign = 1
    for pos, j in enumerate(active):
        keep = [c for c in active if c != j]
        minor = tuple(tuple(row[c] for c in keep) for row in sub)
        vec[j] = (1 if pos % 2 == 0 else -1) * det_bareiss(minor)
    g = math.gcd(*(abs(x) for x in vec))
    if g == 0:
        raise InternalError("kernel generator vanished")
    vec = [x // g for x in vec]
    neg = [-x for x in vec]
    return tuple(min(vec, neg))


def siegel_solve(A, L: int | None = None, M: int | None = None) -> tuple[int, ...]:
    """Lexicographically least nonzero integer solution of A t = 0 among
    those of minimal sup-norm.

    With positive Gram determinant the sup-norm is certified to be at
    most the instance bound; the search enumerates free columns only and
    lifts pivot coordinates exactly, so a missing solution inside the
    bound is a theorem violation and raises InternalError.
    """
    inst = make_instance(A)
    rows = inst.A
    Lr, Mc = inst.shape
    if L is not None and L != Lr:
        raise ParameterError(f"L={L} disagrees with matrix rows {Lr}")
    if M is not None and M != Mc:
        raise ParameterError(f"M={M} disagrees with matrix columns {Mc}")

    pivots, used = _pivot_decomposition(rows)
    rank = len(pivots)
    if Mc - rank == 1:
        return _primitive_kernel_vector(rows, pivots, used)

    free = [c for c in range(Mc) if c not in pivots]
    if rank == 0:
        return tuple(-1 for _ in range(Mc))

    sub = [rows[i] for i in used]
    B = tuple(tuple(row[c] for c in pivots) for row in sub)
    C = tuple(tuple(row[c] for c in free) for row in sub)
    d = det_bareiss(B)
    inv = frac_inv(B)
    adj = tuple(tuple(int(inv[i][j] * d) for j in range(rank))
                for i in range(rank))
    # pivot block solves B x_P = -C x_F; integral iff adj(B) C f = 0 mod d
    adjC = tuple(tuple(sum(adj[i][k] * C[k][j] for k in range(rank))
                       for j in range(len(free)))
                 for i in range(rank))
    d_abs = abs(d)

    def lift(f):
        vals = []
        for i in range(rank):
            s = sum(adjC[i][j] * f[j] for j in range(len(free)))
            if s % d_abs:
                return None
            vals.append(-s // d)
        vec = [0] * Mc
        for c, v in zip(pivots, vals):
            vec[c] = v
        for c, v in zip(free, f):
            vec[c] = v
        return tuple(vec)

    radius = inst.bound if inst.bound is not None else 1
    while True:
        if (2 * radius + 1) ** len(free) > SEARCH_BUDGET:
            raise BudgetExceeded(
                f"free-column search at radius {radius} exceeds {SEARCH_BUDGET}")
        best = None
        for f in product(*(range(-radius, radius + 1) for _ in free)):
            if not any(f):
                continue
            vec = lift(f)
            if vec is None:
                continue
            sup = max(abs(x) for x in vec)
            if sup > radius:
                continue
            key = (sup, vec)
            if best is None or key < best:
                best = key
        if best is not None:
            return best[1]
        if inst.bound is not None:
            raise InternalError(
                f"no solution within certified bound {inst.bound}")
        radius *= 2


def seeded_instances(count: int, seed: int, max_cols: int = 6,
                     entry_bound: int = 5):
    """Deterministic sample of solvable instances with L < M <= max_cols,
    entries in [-entry_bound, entry_bound], and positive Gram determinant."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        M = rng.randint(2, max_cols)
        L = rng.randint(1, M - 1)
        A = [[rng.randint(-entry_bound, entry_bound) for _ in range(M)]
             for _ in range(L)]
        if gram_det(A) > 0:
            out.append(make_instance(A))
    return out
