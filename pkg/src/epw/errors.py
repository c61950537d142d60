"""Exception hierarchy shared by all modules."""


class EpwError(Exception):
    """Base class for all errors raised by this package."""


class FieldMismatchError(EpwError):
    """Operands live over different coefficient fields."""


class ShapeError(EpwError):
    """Matrix or vector dimensions do not match the operation."""


class SpaceMismatchError(EpwError):
    """Wedge operands belong to different spaces (V vs its dual)."""


class DegreeOverflowError(EpwError):
    """Wedge product would exceed the top exterior power."""


class ZeroVectorError(EpwError):
    """A nonzero vector was required."""


class RemainderError(EpwError):
    """Exact polynomial division left a remainder.

    Carries the remainder's total degree in ``degree``.
    """

    def __init__(self, message, degree):
        super().__init__(message)
        self.degree = degree


class NotLagrangianError(EpwError):
    """A subspace violated the Lagrangian invariant."""


class SearchFailureError(EpwError):
    """Randomized search exhausted its retry budget."""


class BadPrimeError(EpwError):
    """The reduction of an integer basis mod p dropped rank."""


class DegenerateLagrangianError(EpwError):
    """det of every chart matrix vanishes identically (Y_A = P(V))."""


class CrossCheckError(EpwError):
    """Two independent computation routes disagreed."""


class PreconditionError(EpwError):
    """An operation was called outside its stated corank precondition."""


class TransversalityError(EpwError):
    """A chart trivialization lost transversality."""


class InconsistencyError(EpwError):
    """Observed data contradicts the certified singularity structure."""


class VerificationError(EpwError):
    """A pinned invariant failed to verify."""


class ReseedError(EpwError):
    """A seeded construction degenerated; retry with another seed."""


class InternalInvariantError(EpwError):
    """An internal consistency assertion failed (likely a bug)."""
