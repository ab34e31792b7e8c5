"""Exception types shared across the package."""


class MosaicError(Exception):
    """Base class for all package errors."""


class DegenerateInput(MosaicError):
    pass


class NotAVertex(MosaicError):
    pass


class OverlappingCells(MosaicError):
    pass


class InconsistentSharedFace(MosaicError):
    pass


class NotFound(MosaicError):
    pass


class InvalidTiling(MosaicError):
    pass


class DimensionMismatch(MosaicError):
    pass


class NonPositiveParameter(MosaicError):
    pass


class NotFaceToFace(MosaicError):
    pass


class UnknownName(MosaicError):
    pass


class VertexFigureNotSimplex(MosaicError):
    pass


class EpsilonTooLarge(MosaicError):
    pass


class NotSimplicial(MosaicError):
    pass


class InvalidRatio(MosaicError):
    pass


class OutOfRange(MosaicError):
    pass


class NonPositive(MosaicError):
    pass


class BelowSimplexDegree(MosaicError):
    pass


class NotAHoneycomb(MosaicError):
    pass


class DegenerateDenominator(MosaicError):
    pass


class OriginNotInterior(MosaicError):
    pass


class TooFewPoints(MosaicError):
    pass


class TooFewPlanes(MosaicError):
    pass
