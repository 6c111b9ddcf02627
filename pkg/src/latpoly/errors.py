"""Exception types shared across the package."""


class LatPolyError(Exception):
    """Base class for all package errors."""


class DimensionMismatchError(LatPolyError):
    """Operands live in different ambient dimensions."""


class DegenerateInputError(LatPolyError):
    """Input point set does not affinely span the requested dimension."""

    def __init__(self, message, rank=None):
        super().__init__(message)
        self.rank = rank


class NonPrimitiveDirectionError(LatPolyError):
    """A direction or normal vector was expected to be primitive."""


class NotCentrallySymmetricError(LatPolyError):
    """Operation requires a polytope centrally symmetric about a lattice point."""


class ResourceCapError(LatPolyError):
    """An enumeration exceeded the configured size cap.

    `partial` may carry whatever partial result was complete when the cap hit.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ConstructionFailureError(LatPolyError):
    """A runtime certification check of a construction failed.

    `tag` names the first violated check (for example "Eq27" or "Eq36") so
    callers and the CLI can report exactly which hypothesis broke.
    """

    def __init__(self, tag, message):
        super().__init__(f"{tag}: {message}")
        self.tag = tag
        self.detail = message


class CensusMismatchError(LatPolyError):
    """The two independent census pipelines disagreed.

    `diff` carries a human-readable description of the first discrepancy.
    """

    def __init__(self, message, diff=None):
        super().__init__(message)
        self.diff = diff
