# src/util/errors.py
from __future__ import annotations


class NslabError(ValueError):
    """Base class for every domain error raised by nslab."""


class NotPrime(NslabError):
    pass


class PrecisionOverflow(NslabError):
    pass


class TableBudgetExceeded(NslabError):
    pass


class ZeroArgument(NslabError):
    pass


class NotInvertible(NslabError):
    pass


class PrecisionExhausted(NslabError):
    """A p-adic value has no guaranteed digits left; rerun with a larger N."""


class NotBalanced(NslabError):
    pass


class ReductionStuck(NslabError):
    """No rewrite rule applies but Gauss sums are still left in the product."""


class BadDenominator(NslabError):
    pass


class BadArgument(NslabError):
    pass


class Unsupported(NslabError):
    pass


class AccuracyBudget(NslabError):
    pass


class OrderTooSmall(NslabError):
    pass


class NoRepresentation(NslabError):
    pass


class WrongResidueClass(NslabError):
    pass


class UsageError(NslabError):
    pass
