"""Multiplicative energy counts and product-set statistics.

Everything here is an exact integer count over pair spaces: the energy
E(A) = #{(a1,a2,a3,a4) : a1*a2 = a3*a4} is computed as the sum of
squared product-representation counts, the ratio form sum_z I(z)^2 is
rebuilt independently when 0 is not in A and must agree, and the mixed
count against a second set is the same histogram trick on a*b.

Histograms are keyed by canonical element codes so iteration order, and
therefore every report, is deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InternalError, SetTooLarge
from .ffield import (
    FieldParams,
    decode,
    ff_inv,
    ff_mul,
    encode,
    make_field,
    mul_table,
    mult_matrix,
)
from .structsets import ElementSet, GapSpec, enumerate_gap

__all__ = [
    "EnergyReport",
    "MixedEnergyReport",
    "ProductSetReport",
    "TranslateReport",
    "mult_energy",
    "mixed_energy",
    "product_set",
    "energy_translate",
]

SET_LIMIT = 10 ** 5
PAIR_LIMIT = 10 ** 7


@dataclass(frozen=True)
class EnergyReport:
    """Energy with its product histogram and optional ratio histogram."""

    E: int
    r_hist: dict[int, int]
    zero_count: int
    I_hist: dict[int, int] | None

    @property
    def set_size(self) -> int:
        return math.isqrt(sum(self.r_hist.values()))


@dataclass(frozen=True)
class MixedEnergyReport:
    value: int
    hist_size: int


@dataclass(frozen=True)
class ProductSetReport:
    """|AA| together with the Cauchy-Schwarz certificate data."""

    size: int
    energy: int
    set_size: int

    @property
    def certified(self) -> bool:
        return self.size * self.energy >= self.set_size ** 4


@dataclass(frozen=True)
class TranslateReport:
    """Energy of a translated progression against its centered form."""

    e_translated: int
    e_symmetric: int
    set_size: int

    @property
    def ok(self) -> bool:
        return self.e_translated <= self.e_symmetric + self.set_size ** 2


def _product_codes(field: FieldParams, codes):
    """Iterator of row functions b -> code(a*b), one per a in codes."""
    q, n = field.q, field.n
    if n == 1:
        for a in codes:
            yield lambda b, a=a: a * b % q
        return
    if field.size <= 2048:
        table = mul_table(field)
        for a in codes:
            row = table[a]
            yield row.__getitem__
        return
    for a in codes:
        mat = mult_matrix(field, decode(field, a))
        def mul(b, mat=mat):
            coords = decode(field, b)
            return encode(field, tuple(
                sum(mat[i][j] * coords[j] for j in range(n)) % q
                for i in range(n)))
        yield mul


def mult_energy(field: FieldParams, A: ElementSet) -> EnergyReport:
    """Exact E(A) with histograms.

    r_hist maps each product code to its pair count over A x A, and
    E = sum of squared counts.  When 0 is not in A the independent
    I-histogram of ratios a*b^{-1} is built as well and the identity
    sum_z I(z)^2 = E is asserted.
    """
    codes = A.elements
    if len(codes) > SET_LIMIT:
        raise SetTooLarge(f"|A| = {len(codes)} exceeds {SET_LIMIT}")
    r_hist: dict[int, int] = {}
    for mul in _product_codes(field, codes):
        for b in codes:
            p = mul(b)
            r_hist[p] = r_hist.get(p, 0) + 1
    E = sum(c * c for c in r_hist.values())
    zero_count = r_hist.get(0, 0)

    I_hist = None
    if 0 not in codes:
        inv_codes = [encode(field, ff_inv(field, decode(field, b)))
                     for b in codes]
        I_hist = {}
        for mul in _product_codes(field, inv_codes):
            # mul runs over rows a * (b^{-1}) with a fixed second factor,
            # so feeding the original codes builds the ratio histogram
            for a in codes:
                z = mul(a)
                I_hist[z] = I_hist.get(z, 0) + 1
        if sum(c * c for c in I_hist.values()) != E:
            raise InternalError("ratio histogram disagrees with energy")
        I_hist = dict(sorted(I_hist.items()))
    return EnergyReport(E=E, r_hist=dict(sorted(r_hist.items())),
                        zero_count=zero_count, I_hist=I_hist)


def mixed_energy(q: int, A: ElementSet, B: ElementSet) -> MixedEnergyReport:
    """Count quadruples a1*b1 = a2*b2 mod q over A x B pairs."""
    if A.size * B.size > PAIR_LIMIT:
        raise SetTooLarge(f"|A|*|B| = {A.size * B.size} exceeds {PAIR_LIMIT}")
    hist: dict[int, int] = {}
    for a in A.elements:
        for b in B.elements:
            p = a * b % q
            hist[p] = hist.get(p, 0) + 1
    return MixedEnergyReport(value=sum(c * c for c in hist.values()),
                             hist_size=len(hist))


def product_set(field: FieldParams, A: ElementSet) -> ProductSetReport:
    """|AA| plus the exact certificate |AA| * E(A) >= |A|^4."""
    rep = mult_energy(field, A)
    report = ProductSetReport(size=len(rep.r_hist), energy=rep.E,
                              set_size=A.size)
    if not report.certified:
        raise InternalError("Cauchy-Schwarz certificate failed")
    return report


def energy_translate(q: int, spec: GapSpec, beta: int) -> TranslateReport:
    """Energy of the beta-translate against the centered progression.

    The centered form uses symmetric ranges |h_i| <= H.  The report's
    ok flag is the comparison E(translate) <= E(centered) + |set|^2.
    """
    field = make_field(q, 1)
    translated = enumerate_gap(q, GapSpec(spec.alphas, spec.H, beta=beta))
    centered = enumerate_gap(q, GapSpec(spec.alphas, spec.H, beta=0,
                                        symmetric=True, range_bound=spec.H))
    e_tr = mult_energy(field, translated).E
    e_sym = mult_energy(field, centered).E
    return TranslateReport(e_translated=e_tr, e_symmetric=e_sym,
                           set_size=translated.size)
