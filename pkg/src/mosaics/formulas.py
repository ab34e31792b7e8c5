"""Closed-form degree arithmetic, bounds and classification predicates."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import (
    BelowSimplexDegree,
    DegenerateDenominator,
    NonPositive,
    NotAHoneycomb,
)
from .exact import mpq, rational

__all__ = [
    "CurvatureClass",
    "harmonic_degree",
    "hyperplane_h",
    "foam_recursion",
    "barycentric_degrees",
    "h_lower_bound",
    "refined_3d_bound",
    "refined_3d_h_bound",
    "REFINED_3D_H_FLOOR",
    "schlafli_classify",
    "PLATONIC",
    "platonic_counts",
    "regular_honeycomb_stats",
    "HoneycombStats",
    "planar_nff_relation",
    "spherical_nff_relation",
    "conjecture_predicate",
]


class CurvatureClass(enum.Enum):
    SPHERICAL = "spherical"
    EUCLIDEAN = "euclidean"
    HYPERBOLIC = "hyperbolic"

    @property
    def label(self) -> str:
        """Name used for 3D honeycombs (spherical ones tile the 3-sphere)."""
        return {"spherical": "elliptic", "euclidean": "euclidean", "hyperbolic": "hyperbolic"}[self.value]


def harmonic_degree(n_bar, v_bar):
    """Half the harmonic mean of the average nodal and cell degrees."""
    n, v = rational(n_bar), rational(v_bar)
    if n <= 0 or v <= 0:
        raise NonPositive("degrees must be positive")
    return n * v / (n + v)


def hyperplane_h(d: int):
    """Harmonic degree of a hyperplane arrangement in general position."""
    if d < 1:
        raise ValueError("d must be at least 1")
    return mpq(2) ** (d - 1)


def foam_recursion(x0, d: int, k) -> mpq:
    """k-fold iterate of x -> (d+1)^2 x / (d+1+x); k = inf gives the fixed point d(d+1)."""
    x = rational(x0)
    if x < d + 1:
        raise BelowSimplexDegree(f"x0 = {x} is below d+1 = {d + 1}")
    if k == math.inf:
        return mpq(d * (d + 1))
    for _ in range(int(k)):
        x = (d + 1) ** 2 * x / (d + 1 + x)
    return x


def barycentric_degrees(d: int) -> tuple:
    """(n, v, h) of the barycentric subdivision of any face-to-face mosaic."""
    n = mpq(math.factorial(d + 1))
    v = mpq(d + 1)
    h = n / (1 + math.factorial(d))
    assert d <= h < d + 1
    return n, v, h


def h_lower_bound(d: int):
    return mpq(d + 1, 2)


def refined_3d_bound(v_bar):
    """Lower bound on the average nodal degree of a spatial mosaic with average cell degree v."""
    v = rational(v_bar)
    if v < 4:
        raise BelowSimplexDegree("v must be at least 4")
    if 2 * v - 7 <= 0:
        raise DegenerateDenominator("2v - 7 must be positive")
    return max(mpq(4), 2 * v / (2 * v - 7))


def refined_3d_h_bound(v_bar):
    """Harmonic-degree floor implied by :func:`refined_3d_bound` at a given v."""
    v = rational(v_bar)
    n = refined_3d_bound(v)
    return n * v / (n + v)


#: Minimum of :func:`refined_3d_h_bound` over v >= 4, attained at v = 14/3.
REFINED_3D_H_FLOOR = mpq(28, 13)


def schlafli_classify(p: int, q: int) -> CurvatureClass:
    """Sign of 1/p + 1/q - 1/2: positive spherical, zero Euclidean, negative hyperbolic."""
    if p < 3 or q < 3:
        raise ValueError("Schläfli entries must be at least 3")
    s = mpq(1, p) + mpq(1, q) - mpq(1, 2)
    if s > 0:
        return CurvatureClass.SPHERICAL
    if s == 0:
        return CurvatureClass.EUCLIDEAN
    return CurvatureClass.HYPERBOLIC


#: {p, q} -> (vertices, edges, faces) of the five Platonic solids.
PLATONIC = {
    (3, 3): (4, 6, 4),
    (4, 3): (8, 12, 6),
    (3, 4): (6, 12, 8),
    (5, 3): (20, 30, 12),
    (3, 5): (12, 30, 20),
}


def platonic_counts(p: int, q: int) -> tuple:
    """Table lookup, cross-checked against V = 4p/(4-(p-2)(q-2)), F = 4q/(4-(p-2)(q-2))."""
    if (p, q) not in PLATONIC:
        raise NotAHoneycomb(f"{{{p},{q}}} is not a spherical pair")
    V, E, F = PLATONIC[(p, q)]
    den = 4 - (p - 2) * (q - 2)
    assert V * den == 4 * p and F * den == 4 * q and V - E + F == 2
    return V, E, F


@dataclass(frozen=True)
class HoneycombStats:
    n_bar: mpq
    v_bar: mpq
    h_bar: mpq
    curvature: CurvatureClass


def _coxeter_class(p: int, q: int, r: int) -> CurvatureClass:
    s = math.sin(math.pi / p) * math.sin(math.pi / r) - math.cos(math.pi / q)
    if abs(s) < 1e-12:
        return CurvatureClass.EUCLIDEAN
    return CurvatureClass.SPHERICAL if s > 0 else CurvatureClass.HYPERBOLIC


def regular_honeycomb_stats(p: int, q: int, r: int) -> HoneycombStats:
    """Degrees of the regular honeycomb {p,q,r}.

    A cell is the polyhedron {p,q}, so v is its vertex count; the cells at a
    node correspond to the faces of the vertex figure {q,r}.
    """
    for pair in ((p, q), (q, r)):
        if pair not in PLATONIC:
            raise NotAHoneycomb(f"{{{pair[0]},{pair[1]}}} is not a spherical pair")
    v = mpq(PLATONIC[(p, q)][0])
    n = mpq(PLATONIC[(q, r)][2])
    return HoneycombStats(n, v, n * v / (n + v), _coxeter_class(p, q, r))


def planar_nff_relation(v_bar, p) -> tuple:
    """Nodal degree of a planar mosaic with a proportion p of regular nodes.

    Returns (published closed form, angle-sum form).
    The second counts each cell's angle sum (v - 2) pi against pi per
    irregular node and 2 pi per regular node.
    """
    v, p = rational(v_bar), rational(p)
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    if v - p - 1 == 0 or v - 2 == 0:
        raise DegenerateDenominator("degenerate denominator")
    return 2 * v / (v - p - 1), (1 + p) * v / (v - 2)


def spherical_nff_relation(n_bar, mu_bar, p):
    """Average cell degree of a spherical mosaic with a proportion p of regular nodes."""
    n, mu, p = rational(n_bar), rational(mu_bar), rational(p)
    den = n + mu - 1 - p
    if den == 0:
        raise DegenerateDenominator("n + mu - 1 - p vanishes")
    return (2 - mu) * n / den


def conjecture_predicate(stats_or_h, d: int) -> bool:
    """True iff d < h <= 2^(d-1)."""
    h = getattr(stats_or_h, "h_bar", stats_or_h)
    h = rational(h)
    return d < h <= 2 ** (d - 1)
