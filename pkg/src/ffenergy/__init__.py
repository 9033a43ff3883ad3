"""Multiplicative energy of structured sets over small prime-power fields,
with exact lattice-geometry certificates.

The package builds finite fields F_{q^n} at desk scale, enumerates boxes,
progressions, and Bohr sets inside them, computes multiplicative energy
exactly, and certifies the associated congruence-lattice geometry
(successive minima, dual lattices, Minkowski and transference bounds,
small solutions of underdetermined integer systems) in exact rational
arithmetic.  The ``verify`` module packages the headline inequalities as
reproducible checks and the ``cli`` module drives deterministic sweeps.
"""

__version__ = "0.1.0"

from .errors import (
    BudgetExceeded,
    CertificateViolation,
    DegenerateOmega,
    DeskScaleExceeded,
    ImproperHypothesis,
    InternalError,
    KernelConditionFails,
    NonPrimeModulus,
    ParameterError,
    RadiusTooSmall,
    RankExceedsModulus,
    ReduciblePolynomial,
    SetTooLarge,
    SideExceedsModulus,
    SingularBasis,
    ZeroInverse,
)
from .ffield import (
    FieldParams,
    as_element,
    decode,
    default_modulus,
    encode,
    ff_add,
    ff_inv,
    ff_mul,
    ff_pow,
    is_prime,
    make_field,
    mult_matrix,
    one,
    unit_codes,
    zero,
)
from .structsets import (
    BohrSpec,
    BoxSpec,
    ElementSet,
    FourierReport,
    GapSpec,
    enumerate_bohr,
    enumerate_box,
    enumerate_gap,
    gap_fourier,
    is_proper,
    parseval_check,
)
from .energy import (
    EnergyReport,
    MixedEnergyReport,
    ProductSetReport,
    TranslateReport,
    energy_translate,
    mixed_energy,
    mult_energy,
    product_set,
)
from .latgeom import (
    BodyKind,
    BodySpec,
    CongruenceForm,
    IntLattice,
    MinimaReport,
    dual_body,
    dual_lattice,
    gamma_box,
    gamma_gap,
    lattice_point_count,
    make_lattice,
    minkowski_certificate,
    successive_minima,
    successive_minima_auto,
    transference_certificate,
)
from .siegel import (
    SiegelInstance,
    gram_det,
    iroot,
    make_instance,
    seeded_instances,
    siegel_solve,
)
from .verify import (
    ConditionReport,
    VerifyReport,
    admissible_H,
    check_conditions_thm1,
    dyadic_eps_grid,
    lattice_certificates,
    shared_shapes,
    stability_max_ratio,
    stability_min_lower,
    theorem2_alphas,
    verify_lemma5,
    verify_lemma6,
    verify_membership_uniqueness,
    verify_reduction_lemma,
    verify_shao,
    verify_theorem1,
    verify_theorem2,
)

__all__ = [
    "__version__",
    # errors
    "BudgetExceeded", "CertificateViolation", "DegenerateOmega",
    "DeskScaleExceeded", "ImproperHypothesis", "InternalError",
    "KernelConditionFails", "NonPrimeModulus", "ParameterError",
    "RadiusTooSmall", "RankExceedsModulus", "ReduciblePolynomial",
    "SetTooLarge", "SideExceedsModulus", "SingularBasis", "ZeroInverse",
    # fields
    "FieldParams", "as_element", "decode", "default_modulus", "encode",
    "ff_add", "ff_inv", "ff_mul", "ff_pow", "is_prime", "make_field",
    "mult_matrix", "one", "unit_codes", "zero",
    # structured sets
    "BohrSpec", "BoxSpec", "ElementSet", "FourierReport", "GapSpec",
    "enumerate_bohr", "enumerate_box", "enumerate_gap", "gap_fourier",
    "is_proper", "parseval_check",
    # energy
    "EnergyReport", "MixedEnergyReport", "ProductSetReport",
    "TranslateReport", "energy_translate", "mixed_energy", "mult_energy",
    "product_set",
    # lattice geometry
    "BodyKind", "BodySpec", "CongruenceForm", "IntLattice", "MinimaReport",
    "dual_body", "dual_lattice", "gamma_box", "gamma_gap",
    "lattice_point_count", "make_lattice", "minkowski_certificate",
    "successive_minima", "successive_minima_auto",
    "transference_certificate",
    # small solutions
    "SiegelInstance", "gram_det", "iroot", "make_instance",
    "seeded_instances", "siegel_solve",
    # verification
    "ConditionReport", "VerifyReport", "admissible_H",
    "check_conditions_thm1", "dyadic_eps_grid", "lattice_certificates",
    "shared_shapes", "stability_max_ratio", "stability_min_lower",
    "theorem2_alphas", "verify_lemma5", "verify_lemma6",
    "verify_membership_uniqueness", "verify_reduction_lemma", "verify_shao",
    "verify_theorem1", "verify_theorem2",
]
