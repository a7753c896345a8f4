"""Shared exception types."""


class SumsetLabError(Exception):
    pass


class InsufficientPrecision(SumsetLabError):
    """An operation would need p-adic digits that are not known and cannot be generated."""


class SizeCap(SumsetLabError):
    """An enumeration would exceed its configured size cap."""


class BudgetExceeded(SumsetLabError):
    """A search exceeded its configured node or case budget."""


class PreconditionFailed(SumsetLabError):
    pass


class MeanTooSmall(PreconditionFailed):
    pass


class PartitionOfUnityViolated(PreconditionFailed):
    pass


class ConstantPolynomial(SumsetLabError):
    pass


class ZeroDegree(SumsetLabError):
    pass


class ConfigInvalid(SumsetLabError):
    pass
