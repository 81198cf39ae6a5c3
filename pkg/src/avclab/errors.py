"""Exception hierarchy. Every domain failure derives from :class:`AvclabError`."""


class AvclabError(Exception):
    """Base class for domain errors (violated preconditions, unsupported inputs)."""


class DimensionMismatch(AvclabError, ValueError):
    pass


class PreconditionError(AvclabError, ValueError):
    pass


class UnsupportedBodyError(AvclabError):
    """The operation needs a polyhedral constraint body."""


class NoSupportError(AvclabError):
    """The dual seminorm is infinite, so no maximizing vertex exists."""


class DegenerateHypothesisError(AvclabError, ValueError):
    """Halfspace with a zero normal where a boundary distance is required."""


class CoverageError(AvclabError, KeyError):
    """A neighbourhood reaches a point the tabulated class does not cover."""


class CapacityError(AvclabError):
    """An exhaustive computation would exceed its configured cap."""
