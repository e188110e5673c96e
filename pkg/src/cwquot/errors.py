"""Exception types shared across the toolkit."""


class CWQError(Exception):
    """Base class for all toolkit errors."""


class ZeroConstantTerm(CWQError):
    pass


class NotMonic(CWQError):
    pass


class DependentColumns(CWQError):
    pass


class InconclusiveAtResolution(CWQError):
    pass


class BadRelation(CWQError):
    pass


class ShapeMismatch(CWQError):
    pass


class OddLength(CWQError):
    pass


class InvalidBlock(CWQError):
    pass


class SearchBudgetExceeded(CWQError):
    pass


class RelationViolated(CWQError):
    pass


class DimensionMismatch(CWQError):
    pass


class IncompatibleAmbient(CWQError):
    pass


class NotSemisimple(CWQError):
    pass


class NonIntegerCharPoly(CWQError):
    pass


class ConstantTermNotUnit(CWQError):
    pass


class InterpolationFailure(CWQError):
    pass


class DegeneratePairing(CWQError):
    pass


class NotAdmissible(CWQError):
    pass


class InvariantViolation(CWQError):
    pass


class UnverifiedCertificate(CWQError):
    pass


class ConstellationClash(CWQError):
    pass


class NotSquarefree(CWQError):
    pass


class NonSymbolicInput(CWQError):
    pass
