"""Exact arithmetic in F_q and F_{q^n} with a configurable basis.

Elements of F_{q^n} are coordinate vectors in a basis w_1, ..., w_n,
stored as length-n tuples of integers in [0, q).  A canonical integer
encoding sum(coords[i] * q**i) gives each element a stable sort key and
a compact histogram key; ``encode``/``decode`` convert between the two.

Arithmetic goes through the power basis: coordinates are mapped by the
basis matrix, polynomials are multiplied mod the modulus polynomial,
and the result is mapped back.  All integers stay below n**2 * q**2,
so exactness never needs big-float tricks; fields larger than
DESK_SCALE_LIMIT are rejected outright.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from ._linalg import mat_inv_mod, mat_vec_mod
from .errors import (
    DeskScaleExceeded,
    NonPrimeModulus,
    ParameterError,
    ReduciblePolynomial,
    SingularBasis,
    ZeroInverse,
)

DESK_SCALE_LIMIT = 2 ** 20

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(m: int) -> bool:
    """Deterministic Miller-Rabin; exact for every m below 3.3e24."""
    if m < 2:
        return False
    for p in _SMALL_PRIMES:
        if m % p == 0:
            return m == p
    d = m - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# polynomial helpers: coefficient tuples, lowest degree first
# ---------------------------------------------------------------------------

def _poly_trim(p):
    i = len(p)
    while i > 0 and p[i - 1] == 0:
        i -= 1
    return tuple(p[:i])


def _poly_mul(a, b, q):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % q
    return _poly_trim(out)


def _poly_rem(a, mod, q):
    """Remainder of a modulo a monic polynomial mod."""
    a = list(a)
    dm = len(mod) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % q
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % q
    return _poly_trim(a[:dm])


def _poly_divmod(a, b, q):
    """Division with remainder by an arbitrary nonzero polynomial b."""
    a = [x % q for x in a]
    b = _poly_trim([x % q for x in b])
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, q)
    quot = [0] * max(1, len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv_lead % q
        if c:
            quot[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % q
    return _poly_trim(quot), _poly_trim(a)


def _poly_is_irreducible(poly, q) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    n = len(poly) - 1
    for deg in range(1, n // 2 + 1):
        for tail in itertools.product(range(q), repeat=deg):
            divisor = tail + (1,)
            _, rem = _poly_divmod(poly, divisor, q)
            if not rem:
                return False
    return True


def default_modulus(q: int, n: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree n over F_q.

    Coefficient tuples are compared lowest degree first.
    """
    for tail in itertools.product(range(q), repeat=n):
        poly = tail + (1,)
        if _poly_is_irreducible(poly, q):
            return poly
    raise ReduciblePolynomial(f"no irreducible polynomial found for q={q}, n={n}")


# ---------------------------------------------------------------------------
# field parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldParams:
    """Validated parameters of F_{q^n}; construct via make_field."""

    q: int
    n: int
    modulus: tuple[int, ...]
    basis: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return self.q ** self.n

    @property
    def power_basis(self) -> bool:
        return all(
            self.basis[i][j] == (1 if i == j else 0)
            for i in range(self.n) for j in range(self.n)
        )


@lru_cache(maxsize=None)
def _basis_inv(field: FieldParams):
    inv = mat_inv_mod(field.basis, field.q)
    if inv is None:
        raise SingularBasis("basis matrix is singular mod q")
    return inv


def make_field(q: int, n: int, poly=None, basis=None) -> FieldParams:
    """Validate parameters and return FieldParams.

    poly defaults to the lexicographically smallest monic irreducible of
    degree n (low-degree coefficients compared first); basis defaults to
    the power basis (identity matrix, columns = coordinates of w_j).
    """
    if not isinstance(q, int) or not isinstance(n, int) or n < 1:
        raise ParameterError(f"need integer q >= 2 and n >= 1, got q={q!r}, n={n!r}")
    if not is_prime(q):
        raise NonPrimeModulus(f"q={q} is not prime")
    if q ** n > DESK_SCALE_LIMIT:
        raise DeskScaleExceeded(f"q**n = {q ** n} exceeds limit {DESK_SCALE_LIMIT}")

    if poly is None:
        modulus = default_modulus(q, n)
    else:
        modulus = tuple(int(c) % q for c in poly)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise ReduciblePolynomial(
                f"modulus must be monic of degree {n}, got {tuple(poly)}")
        if not _poly_is_irreducible(modulus, q):
            raise ReduciblePolynomial(f"modulus {modulus} factors over F_{q}")

    if basis is None:
        bmat = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    else:
        bmat = tuple(tuple(int(x) % q for x in row) for row in basis)
        if len(bmat) != n or any(len(row) != n for row in bmat):
            raise ParameterError(f"basis must be {n}x{n}")
        if mat_inv_mod(bmat, q) is None:
            raise SingularBasis("basis matrix is singular mod q")

    return FieldParams(q=q, n=n, modulus=modulus, basis=bmat)


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

def as_element(field: FieldParams, v) -> tuple[int, ...]:
    """Coerce an int code or a coordinate sequence to normalized coords."""
    if isinstance(v, int):
        return decode(field, v)
    coords = tuple(int(x) % field.q for x in v)
    if len(coords) != field.n:
        raise ParameterError(f"element needs {field.n} coordinates, got {len(coords)}")
    return coords


def encode(field: FieldParams, coords) -> int:
    code = 0
    for c in reversed(tuple(coords)):
        code = code * field.q + (c % field.q)
    return code


def decode(field: FieldParams, code: int) -> tuple[int, ...]:
    if not 0 <= code < field.size:
        raise ParameterError(f"code {code} outside [0, {field.size})")
    out = []
    for _ in range(field.n):
        code, c = divmod(code, field.q)
        out.append(c)
    return tuple(out)


def zero(field: FieldParams) -> tuple[int, ...]:
    return (0,) * field.n


def one(field: FieldParams) -> tuple[int, ...]:
    """Coordinates of the multiplicative identity in the w-basis."""
    q, n = field.q, field.n
    if field.power_basis:
        return (1,) + (0,) * (n - 1)
    unit_power = (1,) + (0,) * (n - 1)
    return mat_vec_mod(_basis_inv(field), unit_power, q)


def ff_add(field: FieldParams, a, b) -> tuple[int, ...]:
    a = as_element(field, a)
    b = as_element(field, b)
    return tuple((x + y) % field.q for x, y in zip(a, b))


def ff_mul(field: FieldParams, a, b) -> tuple[int, ...]:
    """Product in F_{q^n}: map to power basis, multiply mod modulus, map back."""
    q, n = field.q, field.n
    a = as_element(field, a)
    b = as_element(field, b)
    if n == 1:
        return (a[0] * b[0] % q,)
    if field.power_basis:
        pa, pb = a, b
    else:
        pa = mat_vec_mod(field.basis, a, q)
        pb = mat_vec_mod(field.basis, b, q)
    prod = _poly_rem(_poly_mul(pa, pb, q), field.modulus, q)
    prod = prod + (0,) * (n - len(prod))
    if field.power_basis:
        return prod
    return mat_vec_mod(_basis_inv(field), prod, q)


def ff_inv(field: FieldParams, a) -> tuple[int, ...]:
    """Inverse via extended Euclid on power-basis polynomials."""
    q, n = field.q, field.n
    a = as_element(field, a)
    if all(c == 0 for c in a):
        raise ZeroInverse("zero element has no inverse")
    if n == 1:
        return (pow(a[0], -1, q),)
    pa = a if field.power_basis else mat_vec_mod(field.basis, a, q)
    # extended Euclid: r0 = modulus, r1 = pa
    r0, r1 = field.modulus, _poly_trim(pa)
    s0, s1 = (), (1,)
    while r1:
        quot, rem = _poly_divmod(r0, r1, q)
        r0, r1 = r1, rem
        qs = _poly_mul(quot, s1, q)
        new_s = list(s0) + [0] * max(0, len(qs) - len(s0))
        for i, c in enumerate(qs):
            new_s[i] = (new_s[i] - c) % q
        s0, s1 = s1, _poly_trim(new_s)
    # r0 is a nonzero constant gcd; scale s0 by its inverse
    scale = pow(r0[0], -1, q)
    inv_poly = tuple(c * scale % q for c in s0)
    inv_poly = _poly_rem(inv_poly, field.modulus, q)
    inv_poly = inv_poly + (0,) * (n - len(inv_poly))
    if field.power_basis:
        return inv_poly
    return mat_vec_mod(_basis_inv(field), inv_poly, q)


def ff_pow(field: FieldParams, a, e: int) -> tuple[int, ...]:
    a = as_element(field, a)
    if e < 0:
        a = ff_inv(field, a)
        e = -e
    result = one(field)
    base = a
    while e:
        if e & 1:
            result = ff_mul(field, result, base)
        base = ff_mul(field, base, base)
        e >>= 1
    return result


def mult_matrix(field: FieldParams, z) -> tuple[tuple[int, ...], ...]:
    """Matrix M_z with M_z @ x = coords of z*x; column j = coords of z*w_j."""
    n = field.n
    z = as_element(field, z)
    cols = []
    for j in range(n):
        e_j = tuple(1 if i == j else 0 for i in range(n))
        cols.append(ff_mul(field, z, e_j))
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def unit_codes(field: FieldParams) -> range:
    """Codes of the nonzero elements (code 0 is always the zero element)."""
    return range(1, field.size)


@lru_cache(maxsize=8)
def mul_table(field: FieldParams):
    """Full product table index[a][b] -> code of a*b, for small fields.

    Built once per field and reused by the energy module; restricted to
    q**n <= 2048 so the table stays a few MB at most.
    """
    size = field.size
    if size > 2048:
        raise DeskScaleExceeded(f"product table wants {size}x{size} entries")
    q, n = field.q, field.n
    rows = []
    for a in range(size):
        ma = mult_matrix(field, decode(field, a))
        row = [0] * size
        for b in range(size):
            coords = decode(field, b)
            prod = tuple(
                sum(ma[i][j] * coords[j] for j in range(n)) % q for i in range(n)
            )
            row[b] = encode(field, prod)
        rows.append(tuple(row))
    return tuple(rows)
