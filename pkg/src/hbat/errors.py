"""Shared exception types."""


class HbatError(Exception):
    """Base class for errors raised by this package."""


class GenerationTimeout(HbatError):
    """Challenge generation exhausted its iteration budget."""


class PrincipleViolationError(HbatError):
    """A transcript matched more than one sweetword.

    This is impossible for a well-formed challenge (the designated round
    forces pairwise-disjoint response sets), so it signals a generator
    bug rather than a user error.
    """


class NoRecordError(HbatError, KeyError):
    """No record stored for the requested username."""


class SweetwordValidationError(HbatError, ValueError):
    """A sweetword set failed its scheme constraints."""
