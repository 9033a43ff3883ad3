"""Structured subsets of finite fields and their Fourier data.

Three families are built here: coordinate boxes in F_{q^n}, equal-side
generalized progressions in F_q, and Bohr sets in F_q.  Realized sets
are returned as ElementSet values holding sorted canonical codes plus
the number of generating tuples, so collapse (distinct tuples hitting
the same element) stays observable instead of being an error.

Bohr membership and all properness decisions are exact integer
comparisons; the only floating point in this module is the complex
Fourier coefficient of a progression, whose bound certificate divides
by an exactly computed rational.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParameterError, SideExceedsModulus
from .ffield import FieldParams, encode

__all__ = [
    "BoxSpec",
    "GapSpec",
    "BohrSpec",
    "ElementSet",
    "FourierReport",
    "enumerate_box",
    "enumerate_gap",
    "is_proper",
    "enumerate_bohr",
    "gap_fourier",
    "parseval_check",
]


@dataclass(frozen=True)
class ElementSet:
    """Sorted duplicate-free codes plus the generating-tuple count."""

    elements: tuple[int, ...]
    multiplicity_total: int

    def __post_init__(self):
        if len(self.elements) > self.multiplicity_total:
            raise ParameterError("more distinct elements than generating tuples")

    @property
    def size(self) -> int:
        return len(self.elements)

    def __contains__(self, code: int) -> bool:
        return code in set(self.elements)


def _from_codes(codes, multiplicity_total: int) -> ElementSet:
    return ElementSet(tuple(sorted(set(codes))), multiplicity_total)


@dataclass(frozen=True)
class BoxSpec:
    """Coordinate windows M_i < h_i <= M_i + H_i in a fixed basis."""

    M: tuple[int, ...]
    H: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "M", tuple(int(m) for m in self.M))
        object.__setattr__(self, "H", tuple(int(h) for h in self.H))
        if len(self.M) != len(self.H):
            raise ParameterError("M and H must have equal length")
        if any(h < 1 for h in self.H):
            raise ParameterError("side lengths must be >= 1")

    @property
    def n(self) -> int:
        return len(self.H)

    def monotone_h(self, q: int) -> bool:
        """Sides weakly decreasing and bounded by q."""
        return self.H[0] <= q and all(
            self.H[i + 1] <= self.H[i] for i in range(self.n - 1)
        )


def enumerate_box(field: FieldParams, spec: BoxSpec) -> ElementSet:
    """All elements sum_i h_i*w_i with h_i in the spec windows, mod q.

    Each window has length H_i <= q, so distinct coordinate tuples give
    distinct elements and the result has exactly prod(H_i) members.
    """
    if spec.n != field.n:
        raise ParameterError(f"spec rank {spec.n} != field degree {field.n}")
    for h in spec.H:
        if h > field.q:
            raise SideExceedsModulus(f"side {h} exceeds q={field.q}")
    q = field.q
    total = math.prod(spec.H)
    ranges = [
        [(m + t) % q for t in range(1, h + 1)] for m, h in zip(spec.M, spec.H)
    ]
    codes = [encode(field, coords) for coords in itertools.product(*ranges)]
    return _from_codes(codes, total)


@dataclass(frozen=True)
class GapSpec:
    """Equal-side progression beta + sum(alpha_i * h_i) mod q.

    Default ranges are 1 <= h_i <= H; with symmetric=True the ranges
    become |h_i| <= range_bound (defaulting to H), which houses both the
    centered progression and the widened properness test set.
    """

    alphas: tuple[int, ...]
    H: int
    beta: int = 0
    symmetric: bool = False
    range_bound: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(int(a) for a in self.alphas))
        object.__setattr__(self, "H", int(self.H))
        object.__setattr__(self, "beta", int(self.beta))
        if not self.alphas:
            raise ParameterError("need at least one coefficient alpha_i")
        if self.H < 1:
            raise ParameterError("H must be >= 1")
        if self.symmetric:
            rb = self.H if self.range_bound is None else int(self.range_bound)
            if rb < 0:
                raise ParameterError("range_bound must be >= 0")
            object.__setattr__(self, "range_bound", rb)
        elif self.range_bound is not None:
            raise ParameterError("range_bound only applies to symmetric specs")

    @property
    def d(self) -> int:
        return len(self.alphas)

    def coordinate_range(self) -> range:
        if self.symmetric:
            return range(-self.range_bound, self.range_bound + 1)
        return range(1, self.H + 1)

    def tuple_count(self) -> int:
        return len(self.coordinate_range()) ** self.d

    def widened(self) -> "GapSpec":
        """The symmetric spec with range |h_i| <= H**2, beta dropped."""
        return GapSpec(self.alphas, self.H, beta=0, symmetric=True,
                       range_bound=self.H ** 2)


def _check_gap_modulus(q: int, spec: GapSpec) -> None:
    if q < 2:
        raise ParameterError(f"modulus must be >= 2, got {q}")
    for a in spec.alphas:
        if a % q == 0:
            raise ParameterError(f"coefficient {a} vanishes mod {q}")


def enumerate_gap(q: int, spec: GapSpec) -> ElementSet:
    """Realize the progression as residues mod q."""
    _check_gap_modulus(q, spec)
    rng = spec.coordinate_range()
    values = {spec.beta % q}
    for a in spec.alphas:
        values = {(v + a * h) % q for v in values for h in rng}
    return ElementSet(tuple(sorted(values)), spec.tuple_count())


def is_proper(q: int, spec: GapSpec):
    """Whether distinct generating tuples give distinct residues.

    Returns (True, None) or (False, (t1, t2)) where t1, t2 are the first
    colliding pair in lexicographic scan order over the tuple space.
    """
    _check_gap_modulus(q, spec)
    rng = spec.coordinate_range()
    seen: dict[int, tuple[int, ...]] = {}
    for tup in itertools.product(rng, repeat=spec.d):
        v = (spec.beta + sum(a * h for a, h in zip(spec.alphas, tup))) % q
        if v in seen:
            return False, (seen[v], tup)
        seen[v] = tup
    return True, None


@dataclass(frozen=True)
class BohrSpec:
    """Dilation coefficients alpha_i and exact radii eps_i in (0, 1/2]."""

    alphas: tuple[int, ...]
    eps: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(int(a) for a in self.alphas))
        eps = tuple(
            Fraction(e[0], e[1]) if isinstance(e, tuple) else Fraction(e)
            for e in self.eps
        )
        object.__setattr__(self, "eps", eps)
        if len(self.alphas) != len(eps):
            raise ParameterError("alphas and eps must have equal length")
        if not eps:
            raise ParameterError("need at least one coordinate")
        for e in eps:
            if not 0 < e <= Fraction(1, 2):
                raise ParameterError(f"eps={e} outside (0, 1/2]")

    @property
    def d(self) -> int:
        return len(self.alphas)


def enumerate_bohr(q: int, spec: BohrSpec) -> ElementSet:
    """Residues 1 <= x <= q-1 with ||alpha_i*x/q|| <= eps_i for all i.

    The circle-distance comparison min(r, q-r)/q <= eps_i is evaluated
    as min(r, q-r)*den_i <= num_i*q in integers.
    """
    if q < 2:
        raise ParameterError(f"modulus must be >= 2, got {q}")
    members = []
    for x in range(1, q):
        for a, e in zip(spec.alphas, spec.eps):
            r = a * x % q
            if min(r, q - r) * e.denominator > e.numerator * q:
                break
        else:
            members.append(x)
    return ElementSet(tuple(members), len(members))


@dataclass(frozen=True)
class FourierReport:
    """One Fourier coefficient of a progression with its bound check."""

    value: complex
    bound_product: Fraction
    certificate: float

    @property
    def magnitude(self) -> float:
        return abs(self.value)


def _geometric_sum(H: int, r: int, q: int) -> complex:
    """sum_{h=1}^{H} e(h*r/q) in closed form."""
    if r % q == 0:
        return complex(H)
    theta = (r % q) / q
    ratio = math.sin(math.pi * H * theta) / math.sin(math.pi * theta)
    return cmath.exp(1j * math.pi * (H + 1) * theta) * ratio


def gap_fourier(q: int, spec: GapSpec, y: int) -> FourierReport:
    """Fourier coefficient of the progression at frequency y.

    value = (1/q) * e(beta*y/q) * prod_i sum_{h=1}^{H} e(alpha_i*h*y/q),
    each factor from the closed geometric-sum form.  bound_product is
    the exact rational prod_i min(H, q/(2*min(r_i, q-r_i))) with
    r_i = alpha_i*y mod q, and certificate = |value|*q / bound_product,
    which the classical estimate keeps at or below 1.
    """
    if spec.symmetric:
        raise ParameterError("Fourier form is defined for 1..H ranges only")
    _check_gap_modulus(q, spec)
    value = cmath.exp(2j * math.pi * (spec.beta * y % q) / q) / q
    bound = Fraction(1)
    for a in spec.alphas:
        r = a * y % q
        value *= _geometric_sum(spec.H, r, q)
        if r == 0:
            bound *= spec.H
        else:
            bound *= min(Fraction(spec.H), Fraction(q, 2 * min(r, q - r)))
    return FourierReport(value=value, bound_product=bound,
                         certificate=abs(value) * q / float(bound))


def parseval_check(q: int, spec: GapSpec, tol: float = 1e-9):
    """Compare sum_y |A^(y)|^2 against the exact mass sum_v m(v)^2 / q.

    Returns (lhs, rhs, ok) with lhs the floating spectral sum, rhs the
    exact rational mass, and ok the |lhs - rhs| <= tol verdict.  For a
    proper progression rhs equals |set|/q.
    """
    _check_gap_modulus(q, spec)
    lhs = math.fsum(abs(gap_fourier(q, spec, y).value) ** 2 for y in range(q))
    counts: dict[int, int] = {}
    rng = spec.coordinate_range()
    for tup in itertools.product(rng, repeat=spec.d):
        v = (spec.beta + sum(a * h for a, h in zip(spec.alphas, tup))) % q
        counts[v] = counts.get(v, 0) + 1
    rhs = Fraction(sum(c * c for c in counts.values()), q)
    return lhs, rhs, abs(lhs - float(rhs)) <= tol
