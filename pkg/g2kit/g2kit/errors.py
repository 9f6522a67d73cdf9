"""
Exception hierarchy for g2kit.

Every error derives from ``G2KitError``, itself a ``ValueError``, so callers
that only care about "bad input" can keep catching ``ValueError``. Errors that
come with a counterexample keep it on the instance; the CLI serializes it.
"""

__all__ = [
    "G2KitError",
    "SolverFailure",
    "ContextMismatch",
    "DivisionByZero",
    "NotComposition",
    "NotOrthogonal",
    "NormZero",
    "DimensionOverflow",
    "NotAutomorphism",
    "NormNotOne",
    "CertificationFailure",
    "NotSpecialUnitary",
    "NotFixingL",
    "DegenerateForm",
    "BadBasisPosition",
    "NotInComplement",
    "AmbiguousSpectrum",
    "Disagreement",
    "NormNotRepresented",
    "InvalidIso",
    "NotIsomorphic",
    "UnsupportedBackend",
]


class G2KitError(ValueError):
    """Base class for all g2kit errors."""

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details


class SolverFailure(G2KitError):
    """A root refinement did not converge."""


class ContextMismatch(G2KitError):
    """Operands belong to different algebra contexts."""


class DivisionByZero(G2KitError):
    """Inverse of an element of norm zero."""


class NotComposition(G2KitError):
    """The norm form is degenerate on a generated subspace."""


class NotOrthogonal(G2KitError):
    """A doubling element is not orthogonal to the subalgebra."""


class NormZero(G2KitError):
    """An element that must be invertible has norm zero."""


class DimensionOverflow(G2KitError):
    """Doubling would exceed the dimension of the algebra."""


class NotAutomorphism(G2KitError):
    """A matrix fails unit fixing or multiplicativity."""


class NormNotOne(G2KitError):
    """A point expected on the norm-one sphere is not."""


class CertificationFailure(G2KitError):
    """A matrix built by the library failed certification (tolerance or bug)."""


class NotSpecialUnitary(G2KitError):
    """A 3x3 matrix fails det = 1 or the hermitian condition."""


class NotFixingL(G2KitError):
    """An automorphism does not fix the required subalgebra pointwise."""


class DegenerateForm(G2KitError):
    """The hermitian form is degenerate on the chosen basis."""


class BadBasisPosition(G2KitError):
    """The doubling basis is not positioned as required."""


class NotInComplement(G2KitError):
    """A vector is not in the orthogonal complement of L."""


class AmbiguousSpectrum(G2KitError):
    """An eigenvalue sits inside the no-man's-land between two cases."""


class Disagreement(G2KitError):
    """Two independent checks of the same statement disagree."""


class NormNotRepresented(G2KitError):
    """No complement vector of the required norm was found."""


class InvalidIso(G2KitError):
    """A proposed subalgebra isomorphism is not one."""


class NotIsomorphic(G2KitError):
    """Two subalgebras could not be matched."""


class UnsupportedBackend(G2KitError):
    """The operation is not available on this scalar backend."""
