"""Exact degree statistics of convex mosaics in the plane, in space and on the sphere."""

from .errors import MosaicError
from .formulas import harmonic_degree
from .periodic import MosaicStats, PeriodicMosaic, stats

__version__ = "0.1.0"

__all__ = ["MosaicError", "MosaicStats", "PeriodicMosaic", "harmonic_degree", "stats", "__version__"]
