"""Exception hierarchy for the planar toolkit.

Every error raised by the library derives from ``PlanarToolkitError`` so the
CLI can map them to exit status 1 in one place.
"""

from typing import Optional


class PlanarToolkitError(Exception):
    """Base class for all toolkit errors."""


# Graph construction

class NonPlanarError(PlanarToolkitError):
    pass


class NotSimpleError(PlanarToolkitError):
    pass


class DisconnectedError(PlanarToolkitError):
    pass


class InvalidRotationError(PlanarToolkitError):
    """Rotation system is inconsistent or does not describe a sphere embedding."""


class EdgeListError(PlanarToolkitError):
    pass


class NotACycleError(PlanarToolkitError):
    pass


class FaceTooLongError(PlanarToolkitError):
    pass


# Surgery

class UnknownVertexError(PlanarToolkitError):
    pass


class UnknownEdgeError(PlanarToolkitError):
    pass


class AdjacentPairError(PlanarToolkitError):
    pass


class EdgeExistsError(PlanarToolkitError):
    pass


class WrongDegreeError(PlanarToolkitError):
    pass


class NeighborhoodNotIndependentError(PlanarToolkitError):
    pass


class InvalidSpecError(PlanarToolkitError):
    pass


class ResultNotSimpleError(PlanarToolkitError):
    pass


# Coloring and reductions

class InvalidConstraintsError(PlanarToolkitError):
    pass


class TooLargeError(PlanarToolkitError):
    pass


class DiagonalPresentError(PlanarToolkitError):
    pass


class TooManyTrianglesError(PlanarToolkitError):
    pass


class ImproperPartialError(PlanarToolkitError):
    pass


class EngineError(PlanarToolkitError):
    """Internal inconsistency: an engine result failed its own post-check."""


# Catalog and verification

class CapExceededError(PlanarToolkitError):
    pass


class NotCriticalError(PlanarToolkitError):
    pass


class PlanarCodeError(PlanarToolkitError):
    """Malformed planar_code input; ``offset`` is the byte position of the fault."""

    def __init__(self, message: str, offset: Optional[int] = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)


class BadHeaderError(PlanarCodeError):
    pass


class TruncatedError(PlanarCodeError):
    pass
