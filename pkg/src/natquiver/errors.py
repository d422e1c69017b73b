"""Exception hierarchy shared by every module."""

from __future__ import annotations


class AlgebraError(Exception):
    """Base class for all toolkit errors."""


class NonSplit(AlgebraError):
    """A polynomial or a simple block does not split over the base field."""


class NotSemisimple(AlgebraError):
    pass


class RadicalGuard(AlgebraError):
    pass


class OracleLimit(AlgebraError):
    """Instance is too large for a brute-force oracle."""


class SearchExhausted(AlgebraError):
    pass


class NotAnIdeal(AlgebraError):
    pass


class MalformedBimodule(AlgebraError):
    pass


class NotRadicalGraded(AlgebraError):
    pass


class NotApplicable(AlgebraError):
    pass


class InfiniteDimension(AlgebraError):
    pass


class BadCharacteristic(AlgebraError):
    pass


class FormatError(AlgebraError, ValueError):
    """Malformed or inconsistent input document."""
