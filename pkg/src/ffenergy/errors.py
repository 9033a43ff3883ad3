"""Exception types shared across the toolkit.

Two families matter to callers: ParameterError covers rejected inputs
(bad field parameters, malformed specs, out-of-range sizes) and maps to
configuration failures at the CLI layer; the RuntimeError subclasses
signal that a computation could not finish (budget, radius) or that an
exact certificate failed, which would indicate a bug rather than bad
input.
"""


class ParameterError(ValueError):
    """Rejected input parameters."""


class NonPrimeModulus(ParameterError):
    """q failed the deterministic primality test."""


class ReduciblePolynomial(ParameterError):
    """Modulus polynomial is not monic of the right degree, or factors."""


class SingularBasis(ParameterError):
    """Basis matrix is singular mod q, or a lattice basis is singular."""


class DeskScaleExceeded(ParameterError):
    """q**n exceeds the documented desk-scale bound."""


class SideExceedsModulus(ParameterError):
    """A box side length H_i exceeds q, breaking injectivity."""


class ZeroInverse(ZeroDivisionError):
    """Multiplicative inverse of the zero element requested."""


class SetTooLarge(ParameterError):
    """Set size exceeds the enforced memory budget."""


class DegenerateOmega(ParameterError):
    """The scaling residue w of a GAP lattice is 0 mod q."""


class RankExceedsModulus(ParameterError):
    """GAP rank d is not invertible mod q (q <= d)."""


class RadiusTooSmall(RuntimeError):
    """Fewer than dim independent lattice vectors within the search radius.

    Carries ``found``, the length of the independent chain that was
    completed before the radius ran out.
    """

    def __init__(self, message: str, found: int = 0):
        super().__init__(message)
        self.found = found


class BudgetExceeded(RuntimeError):
    """Enumeration cost estimate exceeds the configured budget."""


class InternalError(RuntimeError):
    """An exact identity the code relies on failed; indicates a bug."""


class CertificateViolation(RuntimeError):
    """An exact certificate inequality failed; indicates a bug."""


class ImproperHypothesis(ParameterError):
    """A properness hypothesis fails.

    Carries ``witness``: two generating tuples with equal value.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class KernelConditionFails(ParameterError):
    """The small-kernel precondition fails.

    Carries ``witness``: a nontrivial integer tuple h with
    sum(alpha_i * h_i) = 0 mod q inside the checked range.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness
