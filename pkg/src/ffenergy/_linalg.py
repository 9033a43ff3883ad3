"""Small exact linear-algebra helpers: mod-q matrices, integer
determinants, and rational elimination.

Everything here is dimension <= 12 and exact; no floating point.
Matrices are tuples (or lists) of row tuples.
"""

from __future__ import annotations

from fractions import Fraction


def mat_vec_mod(mat, vec, q):
    return tuple(sum(row[j] * vec[j] for j in range(len(vec))) % q for row in mat)


def mat_mul_mod(a, b, q):
    cols = len(b[0])
    inner = len(b)
    return tuple(
        tuple(sum(arow[k] * b[k][j] for k in range(inner)) % q for j in range(cols))
        for arow in a
    )


def mat_inv_mod(mat, q):
    """Inverse of a square matrix mod prime q, or None if singular."""
    n = len(mat)
    aug = [[mat[i][j] % q for j in range(n)] + [1 if j == i else 0 for j in range(n)]
           for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] % q), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = pow(aug[col][col], -1, q)
        aug[col] = [x * inv % q for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(x - f * y) % q for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def det_bareiss(mat):
    """Exact determinant of an integer matrix (fraction-free elimination)."""
    n = len(mat)
    if n == 0:
        return 1
    m = [list(row) for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((r for r in range(k + 1, n) if m[r][k]), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def frac_inv(mat):
    """Exact inverse over the rationals, or None if singular."""
    n = len(mat)
    aug = [[Fraction(mat[i][j]) for j in range(n)]
           + [Fraction(1 if j == i else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def frac_solve(mat, rhs):
    """Solve mat @ x = rhs exactly (square, full-rank); None if singular."""
    inv = frac_inv(mat)
    if inv is None:
        return None
    return tuple(sum(inv[i][j] * rhs[j] for j in range(len(rhs))) for i in range(len(inv)))


class IndependenceTracker:
    """Incremental rational row echelon for independence testing."""

    def __init__(self, dim: int):
        self.dim = dim
        self._rows: list[tuple[Fraction, ...]] = []
        self._pivots: list[int] = []

    def __len__(self) -> int:
        return len(self._rows)

    def try_add(self, vec) -> bool:
        """Add vec if independent of the rows so far; return success."""
        v = [Fraction(x) for x in vec]
        for row, p in zip(self._rows, self._pivots):
            if v[p]:
                f = v[p] / row[p]
                v = [a - f * b for a, b in zip(v, row)]
        pivot = next((i for i, x in enumerate(v) if x), None)
        if pivot is None:
            return False
        self._rows.append(tuple(v))
        self._pivots.append(pivot)
        return True
