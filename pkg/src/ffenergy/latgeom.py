"""Exact lattice geometry: congruence lattice families, weighted convex
bodies, duals, successive minima, and the classical certificates.

Lattices are (1/denom) times the row span of an integer basis.  The two
families built here have congruence structure (one coordinate block is
determined mod q by the other), which the enumeration engines exploit:
only the free block is iterated and the determined block is lifted
through its q-shifts inside the norm window, so the cost scales with
the free block alone.

Norms are exact rationals throughout.  Internally each body gets
integer coefficients c_i and a scale s with N(g/denom) = key(g)/s,
key = max or sum of c_i*|g_i|, so the hot loops compare integers only.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from ._linalg import IndependenceTracker, det_bareiss, frac_inv, frac_solve
from .errors import (
    BudgetExceeded,
    CertificateViolation,
    DegenerateOmega,
    InternalError,
    ParameterError,
    RadiusTooSmall,
    RankExceedsModulus,
    SingularBasis,
)
from .ffield import FieldParams, as_element, is_prime, mult_matrix
from .structsets import GapSpec

__all__ = [
    "BodyKind",
    "BodySpec",
    "CongruenceForm",
    "IntLattice",
    "MinimaReport",
    "make_lattice",
    "gamma_box",
    "gamma_gap",
    "dual_lattice",
    "dual_body",
    "successive_minima",
    "successive_minima_auto",
    "lattice_point_count",
    "minkowski_certificate",
    "transference_certificate",
]

ENUM_BUDGET = 10 ** 8


class BodyKind(Enum):
    SUP_BOX = "sup_box"
    WEIGHTED_L1 = "weighted_l1"


@dataclass(frozen=True)
class BodySpec:
    """Weighted sup-box or weighted l1 ball, weights positive rationals.

    SUP_BOX:     N(v) = max_i |v_i| / w_i,   volume prod(2 w_i)
    WEIGHTED_L1: N(v) = sum_i |v_i| / w_i,   volume 2^dim prod(w_i)/dim!
    """

    kind: BodyKind
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        ws = tuple(Fraction(w) for w in self.weights)
        object.__setattr__(self, "weights", ws)
        if not ws:
            raise ParameterError("body needs at least one weight")
        if any(w <= 0 for w in ws):
            raise ParameterError("weights must be positive")

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def volume(self) -> Fraction:
        if self.kind is BodyKind.SUP_BOX:
            return math.prod((2 * w for w in self.weights), start=Fraction(1))
        prod_w = math.prod(self.weights, start=Fraction(1))
        return Fraction(2 ** self.dim, math.factorial(self.dim)) * prod_w

    def norm(self, vec, denom: int = 1) -> Fraction:
        terms = (Fraction(abs(v)) / (w * denom)
                 for v, w in zip(vec, self.weights))
        if self.kind is BodyKind.SUP_BOX:
            return max(terms)
        return sum(terms, start=Fraction(0))


def dual_body(body: BodySpec) -> BodySpec:
    """Polar body: kind flips and weights reciprocate.

    The polar of {max |v_i|/w_i <= 1} is {sum w_i |v_i| <= 1}, which in
    this parameterization is the weighted l1 body with weights 1/w_i,
    and conversely; the map is an involution.
    """
    kind = (BodyKind.WEIGHTED_L1 if body.kind is BodyKind.SUP_BOX
            else BodyKind.SUP_BOX)
    return BodySpec(kind, tuple(1 / w for w in body.weights))


@dataclass(frozen=True)
class CongruenceForm:
    """Block congruence shape of a lattice in Z^{2m}.

    free_first: the first m coordinates are free and the last m satisfy
    v = mat*u mod mod; otherwise the roles are swapped and u = mat*v.
    """

    free_first: bool
    mat: tuple[tuple[int, ...], ...]
    mod: int


@dataclass(frozen=True)
class IntLattice:
    """(1/denom) times the row span of an integer basis."""

    dim: int
    basis: tuple[tuple[int, ...], ...]
    denom: int = 1
    structure: CongruenceForm | None = None

    @property
    def det_abs(self) -> Fraction:
        return Fraction(abs(det_bareiss(self.basis)), self.denom ** self.dim)

    def contains(self, vec) -> bool:
        """Exact membership of a rational vector."""
        rhs = tuple(Fraction(v) * self.denom for v in vec)
        mat = tuple(tuple(self.basis[i][j] for i in range(self.dim))
                    for j in range(self.dim))
        coeffs = frac_solve(mat, rhs)
        if coeffs is None:
            raise SingularBasis("lattice basis is singular")
        return all(c.denominator == 1 for c in coeffs)


def make_lattice(basis, denom: int = 1,
                 structure: CongruenceForm | None = None) -> IntLattice:
    rows = tuple(tuple(int(x) for x in row) for row in basis)
    dim = len(rows)
    if any(len(r) != dim for r in rows) or dim == 0:
        raise ParameterError("basis must be a nonempty square matrix")
    if denom < 1:
        raise ParameterError("denom must be >= 1")
    if det_bareiss(rows) == 0:
        raise SingularBasis("basis matrix is singular")
    return IntLattice(dim=dim, basis=rows, denom=denom, structure=structure)


def _structured_basis(form: CongruenceForm) -> tuple[tuple[int, ...], ...]:
    """Canonical basis of the integer lattice a congruence form defines."""
    m = len(form.mat)
    q = form.mod
    rows = []
    if form.free_first:
        for i in range(m):
            free = tuple(1 if k == i else 0 for k in range(m))
            det = tuple(form.mat[j][i] % q for j in range(m))
            rows.append(free + det)
        for j in range(m):
            rows.append((0,) * m + tuple(q if k == j else 0 for k in range(m)))
    else:
        for j in range(m):
            rows.append(tuple(q if k == j else 0 for k in range(m)) + (0,) * m)
        for i in range(m):
            det = tuple(form.mat[j][i] % q for j in range(m))
            free = tuple(1 if k == i else 0 for k in range(m))
            rows.append(det + free)
    return tuple(rows)


def _congruence_lattice(form: CongruenceForm, denom: int = 1) -> IntLattice:
    basis = _structured_basis(form)
    return IntLattice(dim=2 * len(form.mat), basis=basis, denom=denom,
                      structure=form)


def gamma_box(field: FieldParams, z, H) -> tuple[IntLattice, BodySpec]:
    """Lattice of pairs (x, y) in Z^{2n} with y = M_z x mod q, and the
    sup-box with both blocks weighted by the side lengths H."""
    n = field.n
    H = tuple(Fraction(h) for h in H)
    if len(H) != n:
        raise ParameterError(f"need {n} side lengths, got {len(H)}")
    if any(h <= 0 for h in H):
        raise ParameterError("side lengths must be positive")
    mz = mult_matrix(field, as_element(field, z))
    form = CongruenceForm(free_first=True, mat=mz, mod=field.q)
    return _congruence_lattice(form), BodySpec(BodyKind.SUP_BOX, H + H)


def gamma_gap(q: int, spec: GapSpec, w: int, delta=None
              ) -> tuple[IntLattice, BodySpec]:
    """Lattice of pairs (h, y) in Z^{2d} with y = w^{-1}<alpha,h>*alpha
    mod q, and the sup-box weighted (H,...,H, delta_i*q/H,...).

    The y block ranges over multiples of alpha, so membership matches
    the scalar congruence <alpha,h> = d^{-1} w <alpha^{-1}, y> mod q.
    delta defaults to all ones.
    """
    d = spec.d
    if not is_prime(q):
        raise ParameterError(f"q={q} is not prime")
    if q <= d:
        raise RankExceedsModulus(f"need q > d, got q={q}, d={d}")
    if w % q == 0:
        raise DegenerateOmega("scaling residue w vanishes mod q")
    for a in spec.alphas:
        if a % q == 0:
            raise ParameterError(f"coefficient {a} vanishes mod {q}")
    if delta is None:
        delta = (Fraction(1),) * d
    delta = tuple(Fraction(x) for x in delta)
    if len(delta) != d or any(x <= 0 for x in delta):
        raise ParameterError("delta must be d positive rationals")
    winv = pow(w % q, -1, q)
    alphas = [a % q for a in spec.alphas]
    mat = tuple(tuple(winv * alphas[j] * alphas[i] % q for i in range(d))
                for j in range(d))
    form = CongruenceForm(free_first=True, mat=mat, mod=q)
    weights = tuple(Fraction(spec.H) for _ in range(d)) + tuple(
        dl * q / spec.H for dl in delta)
    return _congruence_lattice(form), BodySpec(BodyKind.SUP_BOX, weights)


def dual_lattice(latt: IntLattice) -> IntLattice:
    """Dual lattice with integer basis and scale.

    For a congruence lattice the dual keeps congruence structure with
    the blocks swapped and the matrix negated-transposed; otherwise the
    basis is denom * inverse-transpose put over a common denominator.
    Pairing integrality against the primal generators is verified.
    """
    form = latt.structure
    if form is not None and form.mod % latt.denom == 0:
        q = form.mod
        m = len(form.mat)
        dmat = tuple(tuple(-form.mat[i][j] % q for i in range(m))
                     for j in range(m))
        dform = CongruenceForm(free_first=not form.free_first, mat=dmat,
                               mod=q)
        dual = _congruence_lattice(dform, denom=q // latt.denom)
    else:
        inv = frac_inv(latt.basis)
        if inv is None:
            raise SingularBasis("lattice basis is singular")
        entries = [[latt.denom * inv[j][i] for j in range(latt.dim)]
                   for i in range(latt.dim)]
        lcm = 1
        for row in entries:
            for e in row:
                lcm = math.lcm(lcm, e.denominator)
        ints = [[int(e * lcm) for e in row] for row in entries]
        g = lcm
        for row in ints:
            for e in row:
                g = math.gcd(g, e)
        basis = tuple(tuple(e // g for e in row) for row in ints)
        dual = make_lattice(basis, denom=lcm // g)

    for prow in latt.basis:
        for drow in dual.basis:
            dot = sum(a * b for a, b in zip(prow, drow))
            if dot % (latt.denom * dual.denom):
                raise InternalError("dual pairing is not integral")
    return dual


# ---------------------------------------------------------------------------
# enumeration engines
# ---------------------------------------------------------------------------

def _norm_coeffs(body: BodySpec, denom: int) -> tuple[tuple[int, ...], int]:
    """Integer coefficients c_i and scale s with N(g/denom) = key(g)/s."""
    nums = [w.numerator for w in body.weights]
    dens = [w.denominator for w in body.weights]
    lead = math.lcm(*nums)
    coeffs = tuple(lead * dens[i] // nums[i] for i in range(len(nums)))
    return coeffs, lead * denom


def _floor_frac(x) -> int:
    f = Fraction(x)
    return f.numerator // f.denominator


def _check_budget(windows, rep_estimates=()) -> None:
    cost = 1
    for w in windows:
        cost *= 2 * w + 1
        if cost > ENUM_BUDGET:
            raise BudgetExceeded(f"free-block cost {cost} exceeds {ENUM_BUDGET}")
    for r in rep_estimates:
        cost *= r
        if cost > ENUM_BUDGET:
            raise BudgetExceeded(f"point estimate {cost} exceeds {ENUM_BUDGET}")


def _points_structured_sup(form: CongruenceForm, cf, cd, T: int) -> list:
    """All integer lattice points with max(c_i|g_i|) <= T.

    cf/cd are the norm coefficients of the free and determined blocks in
    block order; windows are exact, so no point needs a norm re-check.
    """
    q = form.mod
    mat = form.mat
    m = len(mat)
    wf = [T // c for c in cf]
    wd = [T // c for c in cd]
    _check_budget(wf, [2 * w // q + 1 for w in wd])
    first = form.free_first
    out = []
    if m == 1:
        a = mat[0][0]
        w0, d0 = wf[0], wd[0]
        for u in range(-w0, w0 + 1):
            c = a * u % q
            for v in range(((c + d0) % q) - d0, d0 + 1, q):
                out.append((u, v) if first else (v, u))
    elif m == 2:
        (a00, a01), (a10, a11) = mat
        w0, w1 = wf
        d0, d1 = wd
        for u0 in range(-w0, w0 + 1):
            b0 = a00 * u0
            b1 = a10 * u0
            for u1 in range(-w1, w1 + 1):
                c0 = (b0 + a01 * u1) % q
                c1 = (b1 + a11 * u1) % q
                for v0 in range(((c0 + d0) % q) - d0, d0 + 1, q):
                    for v1 in range(((c1 + d1) % q) - d1, d1 + 1, q):
                        out.append((u0, u1, v0, v1) if first
                                   else (v0, v1, u0, u1))
    else:
        for u in itertools.product(*[range(-w, w + 1) for w in wf]):
            cs = [sum(mat[j][k] * u[k] for k in range(m)) % q
                  for j in range(m)]
            reps = [range(((c + w) % q) - w, w + 1, q)
                    for c, w in zip(cs, wd)]
            for v in itertools.product(*reps):
                out.append(u + v if first else v + u)
    return out


def _points_structured_l1(form: CongruenceForm, cf, cd, T: int) -> list:
    """All integer lattice points with sum(c_i|g_i|) <= T."""
    q = form.mod
    mat = form.mat
    m = len(mat)
    _check_budget([T // c for c in cf],
                  [2 * (T // c) // q + 1 for c in cd])
    first = form.free_first
    out = []
    if m == 1:
        a = mat[0][0]
        cf0, cd0 = cf[0], cd[0]
        for u in range(-(T // cf0), T // cf0 + 1):
            rem = T - cf0 * abs(u)
            c = a * u % q
            w = rem // cd0
            for v in range(((c + w) % q) - w, w + 1, q):
                out.append((u, v) if first else (v, u))
    elif m == 2:
        (a00, a01), (a10, a11) = mat
        cf0, cf1 = cf
        cd0, cd1 = cd
        for u0 in range(-(T // cf0), T // cf0 + 1):
            rem0 = T - cf0 * abs(u0)
            b0 = a00 * u0
            b1 = a10 * u0
            w1 = rem0 // cf1
            for u1 in range(-w1, w1 + 1):
                rem1 = rem0 - cf1 * abs(u1)
                c0 = (b0 + a01 * u1) % q
                c1 = (b1 + a11 * u1) % q
                d0 = rem1 // cd0
                for v0 in range(((c0 + d0) % q) - d0, d0 + 1, q):
                    d1 = (rem1 - cd0 * abs(v0)) // cd1
                    for v1 in range(((c1 + d1) % q) - d1, d1 + 1, q):
                        out.append((u0, u1, v0, v1) if first
                                   else (v0, v1, u0, u1))
    else:
        def rec_det(j, rem, u, v):
            if j == m:
                out.append(tuple(u) + tuple(v) if first
                           else tuple(v) + tuple(u))
                return
            c = sum(mat[j][k] * u[k] for k in range(m)) % q
            w = rem // cd[j]
            for val in range(((c + w) % q) - w, w + 1, q):
                v.append(val)
                rec_det(j + 1, rem - cd[j] * abs(val), u, v)
                v.pop()

        def rec_free(i, rem, u):
            if i == m:
                rec_det(0, rem, u, [])
                return
            w = rem // cf[i]
            for val in range(-w, w + 1):
                u.append(val)
                rec_free(i + 1, rem - cf[i] * abs(val), u)
                u.pop()

        rec_free(0, T, [])
    return out


def _points_generic(latt: IntLattice, body: BodySpec, coeffs, T: int) -> list:
    """Coefficient-box enumeration for lattices without structure."""
    inv = frac_inv(latt.basis)
    if inv is None:
        raise SingularBasis("lattice basis is singular")
    dim = latt.dim
    wnd = [T // c for c in coeffs]
    bounds = []
    for i in range(dim):
        b = sum(Fraction(wnd[j]) * abs(inv[j][i]) for j in range(dim))
        bounds.append(_floor_frac(b))
    _check_budget(bounds)
    basis = latt.basis
    sup = body.kind is BodyKind.SUP_BOX
    out = []
    for cvec in itertools.product(*[range(-b, b + 1) for b in bounds]):
        g = tuple(sum(cvec[i] * basis[i][j] for i in range(dim))
                  for j in range(dim))
        if sup:
            if all(abs(g[j]) <= wnd[j] for j in range(dim)):
                out.append(g)
        elif sum(c * abs(x) for c, x in zip(coeffs, g)) <= T:
            out.append(g)
    return out


def _enumerate(latt: IntLattice, body: BodySpec, radius) -> tuple[list, tuple, int]:
    if body.dim != latt.dim:
        raise ParameterError("body and lattice dimensions differ")
    radius = Fraction(radius)
    if radius < 0:
        raise ParameterError("radius must be >= 0")
    coeffs, scale = _norm_coeffs(body, latt.denom)
    T = _floor_frac(radius * scale)
    form = latt.structure
    if form is None:
        pts = _points_generic(latt, body, coeffs, T)
    else:
        m = len(form.mat)
        if form.free_first:
            cf, cd = coeffs[:m], coeffs[m:]
        else:
            cf, cd = coeffs[m:], coeffs[:m]
        if body.kind is BodyKind.SUP_BOX:
            pts = _points_structured_sup(form, cf, cd, T)
        else:
            pts = _points_structured_l1(form, cf, cd, T)
    return pts, coeffs, scale


def _canonical_sign(g: tuple) -> tuple:
    for x in g:
        if x > 0:
            return g
        if x < 0:
            return tuple(-y for y in g)
    return g


@dataclass(frozen=True)
class MinimaReport:
    """Successive minima with witnesses and the s-index.

    minima may be a prefix of the full chain when a caller asked for
    fewer directions; s_index is None when the prefix leaves
    max{j : lambda_j <= 1} undetermined.
    """

    minima: tuple[Fraction, ...]
    witnesses: tuple[tuple[Fraction, ...], ...]
    s_index: int | None


def successive_minima(latt: IntLattice, body: BodySpec, radius,
                      count: int | None = None) -> MinimaReport:
    """Exact successive minima by exhaustive enumeration up to radius.

    All lattice points of norm <= radius are collected, reduced to one
    sign representative, sorted by exact norm then lexicographically,
    and a maximal independent chain is picked greedily; lambda_j is the
    norm of the j-th chain vector.  Raises RadiusTooSmall (carrying the
    number found) when fewer than count independent vectors fit.
    """
    if count is None:
        count = latt.dim
    if not 1 <= count <= latt.dim:
        raise ParameterError(f"count must be in 1..{latt.dim}")
    pts, coeffs, scale = _enumerate(latt, body, radius)
    sup = body.kind is BodyKind.SUP_BOX
    seen = set()
    for g in pts:
        if any(g):
            seen.add(_canonical_sign(g))
    if sup:
        items = sorted((max(c * abs(x) for c, x in zip(coeffs, g)), g)
                       for g in seen)
    else:
        items = sorted((sum(c * abs(x) for c, x in zip(coeffs, g)), g)
                       for g in seen)
    tracker = IndependenceTracker(latt.dim)
    minima = []
    witnesses = []
    for key, g in items:
        if tracker.try_add(g):
            minima.append(Fraction(key, scale))
            witnesses.append(tuple(Fraction(x, latt.denom) for x in g))
            if len(minima) == count:
                break
    if len(minima) < count:
        raise RadiusTooSmall(
            f"only {len(minima)} independent vectors within radius {radius}",
            found=len(minima))
    below = sum(1 for lam in minima if lam <= 1)
    s_index = below if (below < count or count == latt.dim) else None
    return MinimaReport(minima=tuple(minima), witnesses=tuple(witnesses),
                        s_index=s_index)


def successive_minima_auto(latt: IntLattice, body: BodySpec,
                           count: int | None = None, start=1,
                           max_radius=None) -> MinimaReport:
    """successive_minima with doubling radius growth from start."""
    radius = Fraction(start)
    while True:
        try:
            return successive_minima(latt, body, radius, count=count)
        except RadiusTooSmall:
            radius *= 2
            if max_radius is not None and radius > max_radius:
                raise


def lattice_point_count(latt: IntLattice, body: BodySpec, radius) -> int:
    """Exact number of lattice points of norm <= radius, origin included."""
    pts, _, _ = _enumerate(latt, body, radius)
    return len(pts)


def minkowski_certificate(rep: MinimaReport, body: BodySpec,
                          latt: IntLattice) -> tuple[Fraction, Fraction]:
    """Margins of the second-theorem bounds 2^d/d! <= P <= 2^d with
    P = prod(minima) * Vol(body) / det; both margins are >= 1 exactly."""
    dim = latt.dim
    if len(rep.minima) != dim:
        raise ParameterError("certificate needs the full minima chain")
    P = math.prod(rep.minima, start=Fraction(1)) * body.volume / latt.det_abs
    lower = P * math.factorial(dim) / 2 ** dim
    upper = Fraction(2 ** dim) / P
    if lower < 1 or upper < 1:
        raise CertificateViolation(
            f"minima product {P} outside [2^d/d!, 2^d] for dim {dim}")
    return lower, upper


def transference_certificate(rep: MinimaReport, rep_dual: MinimaReport
                             ) -> tuple[Fraction, ...]:
    """Products p_j = lambda_j * lambda*_{dim-j+1}, each >= 1 exactly."""
    dim = len(rep.minima)
    if len(rep_dual.minima) != dim:
        raise ParameterError("primal and dual chains must have equal length")
    products = tuple(rep.minima[j] * rep_dual.minima[dim - 1 - j]
                     for j in range(dim))
    for j, p in enumerate(products):
        if p < 1:
            raise CertificateViolation(f"transference product {p} < 1 at j={j + 1}")
    return products
