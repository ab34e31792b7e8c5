"""Generators for periodic mosaics and the iterative constructions on them."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    EpsilonTooLarge,
    InvalidRatio,
    NotFaceToFace,
    NotSimplicial,
    OutOfRange,
    UnknownName,
    VertexFigureNotSimplex,
)
from .exact import mpq, rational, sign, sqrt_of
from .geom import (
    ConvexPolytope,
    add,
    convex_hull,
    dot,
    polygon,
    prism as prism_cell,
    scale,
    simplex,
    sub,
    truncate_vertices,
)
from .periodic import MosaicStats, PeriodicMosaic, _face_orbits, harmonic, stats

__all__ = [
    "PLANAR_TILINGS",
    "CONSTRUCTIBLE",
    "build",
    "cubic",
    "planar",
    "prism",
    "alternated_cubic",
    "bitruncated_cubic",
    "hyperplane_generic",
    "brick_wall_2d",
    "brick_wall_3d",
    "barycentric_subdivision",
    "partial_barycentric_cells",
    "foam_step",
    "dual_foam_step",
    "partial_dual_foam_step",
    "LayerRecipe",
    "IterationPlan",
    "layered_strip",
    "strip_counts",
    "layered_mix",
    "harmonic_target",
    "evaluate_target",
]

half = mpq(1, 2)
S3 = sqrt_of(3)
S2 = sqrt_of(2)

# exact cos(30k deg), k = 0..11
_COS30 = [mpq(1), S3 / 2, half, mpq(0), -half, -S3 / 2, mpq(-1), -S3 / 2, -half, mpq(0), half, S3 / 2]


def _cos30(k):
    return _COS30[k % 12]


def _sin30(k):
    return _COS30[(k - 3) % 12]


def _rot30(v, k):
    c, s = _cos30(k), _sin30(k)
    return (c * v[0] - s * v[1], s * v[0] + c * v[1])


def _q(*xs):
    return tuple(mpq(x) if isinstance(x, (int, str)) else x for x in xs)


# ---------------------------------------------------------------------------
# planar tilings


def _nearest(poly_pts, g, k):
    def d2(p):
        w = sub(p, g)
        return dot(w, w)

    return sorted(poly_pts, key=d2)[:k]


def _hole(polys: Sequence[Sequence], centers_g) -> ConvexPolytope:
    """Polygon filling a hole: the two vertices of each surrounding polygon nearest its centre."""
    pts = []
    for poly in polys:
        pts.extend(_nearest(poly, centers_g, 2))
    return convex_hull(list(dict.fromkeys(pts)))


def _shift(pts, t):
    return [add(p, t) for p in pts]


def _triangular():
    lat = [_q(1, 0), (half, S3 / 2)]
    cells = [
        polygon([_q(0, 0), _q(1, 0), (half, S3 / 2)]),
        polygon([_q(1, 0), (mpq(3, 2), S3 / 2), (half, S3 / 2)]),
    ]
    return lat, cells


def _square():
    return [_q(1, 0), _q(0, 1)], [polygon([_q(0, 0), _q(1, 0), _q(1, 1), _q(0, 1)])]


def _hexagonal():
    hexagon = [_rot30(_q(1, 0), 2 * k + 1) for k in range(6)]
    return [(S3, mpq(0)), (S3 / 2, mpq(3, 2))], [polygon(hexagon)]


def _trihexagonal():
    hexagon = [_rot30(_q(1, 0), 2 * k) for k in range(6)]
    cells = [
        polygon(hexagon),
        polygon([_q(1, 0), (mpq(3, 2), S3 / 2), (half, S3 / 2)]),
        polygon([_q(1, 0), (half, -S3 / 2), (mpq(3, 2), -S3 / 2)]),
    ]
    return [_q(2, 0), (mpq(1), S3)], cells


def _snub_square():
    u = lambda k: _rot30(_q(1, 0), k)  # noqa: E731
    P0, P1, P2, P3 = _q(0, 0), _q(1, 0), _q(1, 1), _q(0, 1)
    A = [P0, P1, P2, P3]
    B = [P1, add(P1, u(11)), add(add(P1, u(11)), u(8)), add(P1, u(8))]
    C = [P0, u(5), add(u(5), u(8)), u(8)]
    tris = [
        [P0, P1, add(P1, u(8))],
        [P1, add(P1, u(11)), add(P1, u(1))],
        [P1, add(P1, u(1)), P2],
        [P0, P3, u(5)],
        [P0, u(8), add(P1, u(8))],
    ]
    lat = [(1 + S3 / 2, -half), (half, 1 + S3 / 2)]
    return lat, [polygon(p) for p in [A, B, C] + tris]


def _elongated_triangular():
    lat = [_q(1, 0), (half, 1 + S3 / 2)]
    cells = [
        polygon([_q(0, 0), _q(1, 0), _q(1, 1), _q(0, 1)]),
        polygon([_q(0, 1), _q(1, 1), (half, 1 + S3 / 2)]),
        polygon([_q(1, 1), (mpq(3, 2), 1 + S3 / 2), (half, 1 + S3 / 2)]),
    ]
    return lat, cells


def _truncated_square():
    a = (1 + S2) / 2
    octagon = [(half, a), (-half, a), (-a, half), (-a, -half), (-half, -a), (half, -a), (a, -half), (a, half)]
    c = (a, a)
    h = S2 / 2
    square = [add(c, (h, mpq(0))), add(c, (mpq(0), h)), add(c, (-h, mpq(0))), add(c, (mpq(0), -h))]
    return [(1 + S2, mpq(0)), (mpq(0), 1 + S2)], [polygon(octagon), polygon(square)]


def _dodecagon():
    # apothem 1, edge normals at multiples of 30 degrees
    return [_rot30((mpq(1), 2 - S3), k) for k in range(12)]


def _truncated_hexagonal():
    D = _dodecagon()
    a1, a2 = _q(2, 0), (mpq(1), S3)
    cells = [polygon(D)]
    for tri in ((_q(0, 0), a1, a2), (a1, a2, add(a1, a2))):
        g = scale(add(add(tri[0], tri[1]), tri[2]), mpq(1, 3))
        cells.append(_hole([_shift(D, t) for t in tri], g))
    return [a1, a2], cells


def _rhombitrihexagonal():
    hexagon = [_rot30(_q(1, 0), 2 * k) for k in range(6)]
    a1 = ((3 + S3) / 2, (1 + S3) / 2)
    a2 = (mpq(0), 1 + S3)
    cells = [polygon(hexagon)]
    for j in (0, 1, 5):
        u = _rot30(_q(1, 0), 2 * j + 1)
        v0, v1 = hexagon[j], hexagon[(j + 1) % 6]
        cells.append(polygon([v0, v1, add(v1, u), add(v0, u)]))
    cells.append(polygon([(half, S3 / 2), (half + S3 / 2, half + S3 / 2), (half, 1 + S3 / 2)]))
    cells.append(polygon([_q(1, 0), (1 + S3 / 2, half), (1 + S3 / 2, -half)]))
    return [a1, a2], cells


def _truncated_trihexagonal():
    D = _dodecagon()
    e = 2 * (2 - S3)
    a1 = (2 + e, mpq(0))
    a2 = _rot30(a1, 2)
    cells = [polygon(D)]
    for m in (0, 2, 4):
        u = _rot30(_q(1, 0), m)
        v0, v1 = D[(m - 1) % 12], D[m]
        cells.append(polygon([v0, v1, add(v1, scale(u, e)), add(v0, scale(u, e))]))
    for tri in ((_q(0, 0), a1, a2), (_q(0, 0), a1, sub(a1, a2))):
        g = scale(add(add(tri[0], tri[1]), tri[2]), mpq(1, 3))
        cells.append(_hole([_shift(D, t) for t in tri], g))
    return [a1, a2], cells


def _snub_hexagonal():
    def pt(m, n):
        return (mpq(m) + mpq(n) / 2, mpq(n) * S3 / 2)

    def special(m, n):
        return (3 * m + n) % 7 == 0 and (2 * n - m) % 7 == 0

    cells = [polygon([_rot30(_q(1, 0), 2 * k) for k in range(6)])]
    for m, n in product(range(-4, 5), repeat=2):
        for tri in (((m, n), (m + 1, n), (m, n + 1)), ((m + 1, n), (m + 1, n + 1), (m, n + 1))):
            if any(special(*p) for p in tri):
                continue
            cells.append(polygon([pt(*p) for p in tri]))
    return [pt(2, 1), pt(-1, 3)], cells


def _brick_wall_2d():
    return [_q(2, 0), _q(1, 1)], [polygon([_q(0, 0), _q(2, 0), _q(2, 1), _q(0, 1)])]


PLANAR_TILINGS = {
    "triangular": _triangular,
    "square": _square,
    "hexagonal": _hexagonal,
    "trihexagonal": _trihexagonal,
    "snub_square": _snub_square,
    "elongated_triangular": _elongated_triangular,
    "truncated_square": _truncated_square,
    "truncated_hexagonal": _truncated_hexagonal,
    "rhombitrihexagonal": _rhombitrihexagonal,
    "truncated_trihexagonal": _truncated_trihexagonal,
    "snub_hexagonal": _snub_hexagonal,
}


def planar(name: str) -> PeriodicMosaic:
    if name not in PLANAR_TILINGS:
        raise UnknownName(f"unknown planar tiling {name!r}")
    lat, cells = PLANAR_TILINGS[name]()
    M = PeriodicMosaic.from_cells(lat, cells, True, name)
    M.validate()
    return M


def prism(base: PeriodicMosaic | str, height=1) -> PeriodicMosaic:
    """Stack a planar mosaic into layers of the given height."""
    if isinstance(base, str):
        base = planar(base)
    if base.dimension != 2:
        raise ValueError("prisms are built over planar mosaics")
    h = rational(height)
    z = mpq(0)
    lat = [tuple(r) + (z,) for r in base.lattice] + [(z, z, h)]
    cells = [prism_cell(c.polytope, z, h) for c in base.cells]
    M = PeriodicMosaic.from_cells(lat, cells, base.face_to_face, f"prism:{base.name}")
    M.validate()
    return M


def cubic(d: int = 3) -> PeriodicMosaic:
    if d == 2:
        M = planar("square")
        M.name = "cubic:2"
        return M
    lat = [_q(1, 0, 0), _q(0, 1, 0), _q(0, 0, 1)]
    cube = convex_hull([_q(*p) for p in product((0, 1), repeat=3)])
    M = PeriodicMosaic.from_cells(lat, [cube], True, "cubic")
    M.validate()
    return M


def alternated_cubic() -> PeriodicMosaic:
    lat = [_q(1, 1, 0), _q(1, 0, 1), _q(0, 1, 1)]
    cells = [
        simplex([_q(0, 0, 0), _q(1, 1, 0), _q(1, 0, 1), _q(0, 1, 1)]),
        simplex([_q(2, 0, 0), _q(1, 1, 0), _q(1, 0, 1), _q(2, 1, 1)]),
        convex_hull([_q(0, 0, 0), _q(2, 0, 0), _q(1, 1, 0), _q(1, -1, 0), _q(1, 0, 1), _q(1, 0, -1)]),
    ]
    M = PeriodicMosaic.from_cells(lat, cells, True, "alternated_cubic")
    M.validate()
    return M


def bitruncated_cubic() -> PeriodicMosaic:
    pts = set()
    for perm in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
        for s1, s2 in product((1, -1), repeat=2):
            base = (0, s1 * 1, s2 * 2)
            pts.add(_q(*(base[perm[i]] for i in range(3))))
    lat = [_q(4, 0, 0), _q(0, 4, 0), _q(2, 2, 2)]
    M = PeriodicMosaic.from_cells(lat, [convex_hull(sorted(pts))], True, "bitruncated_cubic")
    M.validate()
    return M


#: Shear used for the generic three-family plane arrangement.
SHEAR = (_q(1, 0, 0), (mpq(1, 3), mpq(1), mpq(0)), (mpq(1, 5), mpq(1, 7), mpq(1)))


def hyperplane_generic() -> PeriodicMosaic:
    """Three families of parallel planes in general position (a sheared cube grid)."""
    from .periodic import _vecmat

    cube = [_vecmat(_q(*p), SHEAR) for p in product((0, 1), repeat=3)]
    M = PeriodicMosaic.from_cells(SHEAR, [convex_hull(cube)], True, "hyperplane_generic")
    M.validate()
    return M


def brick_wall_2d() -> PeriodicMosaic:
    lat, cells = _brick_wall_2d()
    M = PeriodicMosaic.from_cells(lat, cells, False, "brick_wall_2d")
    M.validate()
    return M


def brick_wall_3d() -> PeriodicMosaic:
    """Layers of a planar brick wall, every other layer shifted so that nodes never coincide."""
    lat = [_q(2, 0, 0), _q(1, 1, 0), (half, half, mpq(1))]
    brick = convex_hull([_q(*p) for p in product((0, 2), (0, 1), (0, 1))])
    M = PeriodicMosaic.from_cells(lat, [brick], False, "brick_wall_3d")
    M.validate()
    return M


_SIMPLE = {
    "cubic": lambda: cubic(3),
    "cubic:3": lambda: cubic(3),
    "cubic:2": lambda: cubic(2),
    "alternated_cubic": alternated_cubic,
    "bitruncated_cubic": bitruncated_cubic,
    "hyperplane_generic": hyperplane_generic,
    "brick_wall_3d": brick_wall_3d,
    "brick_wall_2d": brick_wall_2d,
}

#: Names accepted by :func:`build` without parameters.
CONSTRUCTIBLE = (
    ["cubic", "cubic:2", "alternated_cubic", "bitruncated_cubic", "hyperplane_generic", "brick_wall_3d", "brick_wall_2d"]
    + list(PLANAR_TILINGS)
    + [f"prism:{p}" for p in PLANAR_TILINGS]
)


def build(name: str) -> PeriodicMosaic:
    """Build a mosaic by name.

    Simple names are listed in ``CONSTRUCTIBLE``; composite names are
    ``prism:<planar>``, ``barycentric:<name>``, ``foam:<k>:<name>`` and
    ``dualfoam:<k>:<name>``.
    """
    if name in _SIMPLE:
        return _SIMPLE[name]()
    if name in PLANAR_TILINGS:
        return planar(name)
    head, _, rest = name.partition(":")
    if head == "planar" and rest:
        return planar(rest)
    if head == "prism" and rest:
        return prism(rest)
    if head == "barycentric" and rest:
        return barycentric_subdivision(build(rest))
    if head in ("foam", "dualfoam") and rest:
        k, _, inner = rest.partition(":")
        if not k.isdigit() or not inner:
            raise UnknownName(f"expected {head}:<k>:<name>, got {name!r}")
        M = build(inner)
        for _ in range(int(k)):
            M = foam_step(M) if head == "foam" else dual_foam_step(M)
        return M
    raise UnknownName(f"unknown mosaic {name!r}")


# ---------------------------------------------------------------------------
# barycentric subdivision


def _centroid(pts):
    acc = pts[0]
    for p in pts[1:]:
        acc = add(acc, p)
    return scale(acc, mpq(1, len(pts)))


def partial_barycentric_cells(P: ConvexPolytope, frozen: set | None = None) -> list[ConvexPolytope]:
    """Subdivide a cell by the centroids of all its faces except the frozen ones.

    ``frozen`` holds faces (frozensets of vertex indices) that are kept whole.
    With nothing frozen the result is the barycentric subdivision of P, one
    simplex per flag.
    """
    frozen = frozen or set()
    V = P.vertices
    d = P.dim

    def subfaces(face, k):
        if k == 1:
            return [frozenset((i,)) for i in face]
        if k == 2:
            f = next(f for f in P.facets if frozenset(f) == face)
            return [frozenset((f[j], f[(j + 1) % len(f)])) for j in range(len(f))]
        return [frozenset(f) for f in P.facets]

    def pieces(face, k):
        if k == 0:
            return [[V[next(iter(face))]]]
        if face in frozen:
            return [[V[i] for i in sorted(face)]]
        c = _centroid([V[i] for i in sorted(face)])
        out = []
        for g in subfaces(face, k):
            for piece in pieces(g, k - 1):
                out.append(piece + [c])
        return out

    top = frozenset(range(len(V)))
    cells = []
    for pts in pieces(top, d):
        cells.append(simplex(pts) if len(pts) == d + 1 else convex_hull(pts))
    return cells


def barycentric_subdivision(M: PeriodicMosaic) -> PeriodicMosaic:
    """Cells are the simplices spanned by centroid chains F0 < F1 < ... < Fd."""
    if not M.face_to_face:
        raise NotFaceToFace("barycentric subdivision needs a face-to-face mosaic")
    cells = []
    for c in M.cells:
        cells.extend(partial_barycentric_cells(c.polytope))
    out = PeriodicMosaic.from_cells(M.lattice, cells, True, f"barycentric:{M.name}")
    out.validate()
    return out


# ---------------------------------------------------------------------------
# foam and dual foam


def _node_edges(M: PeriodicMosaic) -> list[list]:
    """For each node orbit, the far ends (node, relative shift) of its edges."""
    edges, _ = _face_orbits(M)
    out = [[] for _ in M.nodes]
    for key in edges:
        (i, si), (j, sj) = sorted(key)
        out[i].append((j, tuple(b - a for a, b in zip(si, sj))))
        out[j].append((i, tuple(a - b for a, b in zip(si, sj))))
    return out


def _check_separation(T: ConvexPolytope, new_facets: Iterable[int]) -> None:
    """Every vertex off a new facet must lie strictly inside its plane."""
    planes = T.facet_planes()
    arr = T.vertex_array()
    scale_ = max(1.0, float(np.abs(arr).max()))
    for k in new_facets:
        n, b = planes[k]
        on = set(T.facets[k])
        nf = np.array([float(c) for c in n])
        gap = float(b) - arr @ nf
        for i in np.nonzero(gap <= 1e-9 * scale_ * float(np.linalg.norm(nf)))[0]:
            if int(i) in on:
                continue
            if sign(b - dot(n, T.vertices[i]), 0.0) <= 0:
                raise EpsilonTooLarge("a truncation plane does not separate its vertex")


def foam_step(M: PeriodicMosaic, eps=mpq(1, 4)) -> PeriodicMosaic:
    """Replace every node by a small simplex cut from the ends of its edges.

    The cut point on edge (p, q) is p + t (q - p) with t = eps * m / |q - p|^2,
    where m is the smallest squared edge length.  Cut points are therefore
    rational (or in the coordinate field) and at distance at most eps times the
    shortest edge from p.  Old cells become truncated cells.
    """
    eps = rational(eps)
    if not 0 < eps < half:
        raise EpsilonTooLarge("eps must lie in (0, 1/2)")
    if not M.face_to_face:
        raise NotFaceToFace("foam steps need a face-to-face mosaic")
    d = M.dimension
    st = stats(M)
    nedges = _node_edges(M)
    if any(k != d + 1 for k in st.node_degrees) or any(len(e) != d + 1 for e in nedges):
        raise VertexFigureNotSimplex("every node needs d+1 edges and d+1 cells")
    m = None
    for i, ends in enumerate(nedges):
        p = M.position(i)
        for j, s in ends:
            w = sub(M.position(j, s), p)
            l2 = dot(w, w)
            m = l2 if m is None or l2 < m else m

    def cut(p, q):
        w = sub(q, p)
        return add(p, scale(w, eps * m / dot(w, w)))

    new_cells = []
    for c in M.cells:
        P = c.polytope
        V = P.vertices
        if d == 2:
            pts = []
            cyc = P.boundary_cycle()
            for k, i in enumerate(cyc):
                prev, nxt = cyc[k - 1], cyc[(k + 1) % len(cyc)]
                pts.append(cut(V[i], V[prev]))
                pts.append(cut(V[i], V[nxt]))
            new_cells.append(polygon(pts))
        else:
            cuts = {i: {j: cut(V[i], V[j]) for j in P.neighbors(i)} for i in range(len(V))}
            T, tri = truncate_vertices(P, cuts)
            _check_separation(T, tri.values())
            new_cells.append(T)
    for i, ends in enumerate(nedges):
        p = M.position(i)
        new_cells.append(simplex([cut(p, M.position(j, s)) for j, s in ends]))
    out = PeriodicMosaic.from_cells(M.lattice, new_cells, True, f"foam({M.name})")
    out.validate()
    return out


def partial_dual_foam_step(M: PeriodicMosaic, which: Iterable[int]) -> PeriodicMosaic:
    """Cone the chosen simplex cells from their centroids; keep the others."""
    which = set(which)
    cells = []
    for k, c in enumerate(M.cells):
        P = c.polytope
        if k not in which:
            cells.append(P)
            continue
        if not P.is_simplex():
            raise NotSimplicial(f"cell {k} is not a simplex")
        g = P.centroid()
        for f in P.facets:
            cells.append(simplex([P.vertices[i] for i in f] + [g]))
    out = PeriodicMosaic.from_cells(M.lattice, cells, M.face_to_face, f"dualfoam({M.name})")
    out.validate()
    return out


def dual_foam_step(M: PeriodicMosaic) -> PeriodicMosaic:
    """Split every simplex into d+1 simplices coned from its centroid."""
    bad = [k for k, c in enumerate(M.cells) if not c.polytope.is_simplex()]
    if bad:
        raise NotSimplicial(f"{len(bad)} cells are not simplices")
    return partial_dual_foam_step(M, range(len(M.cells)))


# ---------------------------------------------------------------------------
# layered mixing of cubic and subdivided cubic layers


@dataclass(frozen=True)
class LayerRecipe:
    """Either a ratio of cubic layers ``lam`` or explicit strips (k_m, l_m)."""

    lam: object = None
    strips: tuple = ()

    def __post_init__(self):
        if (self.lam is None) == (not self.strips):
            raise InvalidRatio("give exactly one of lam or strips")
        if self.lam is not None:
            lam = rational(self.lam)
            if not 0 <= lam <= 1:
                raise InvalidRatio("lam must lie in [0, 1]")
            object.__setattr__(self, "lam", lam)
        for k, l in self.strips:
            if k < 1 or l < 1:
                raise InvalidRatio("strip widths must be at least 1")


@dataclass(frozen=True)
class IterationPlan:
    """Dual-foam iterate k of subdivided cubic, then divide a fraction of its cells."""

    k: int
    fraction: object
    n_k: object


def strip_counts(k: int, l: int) -> dict:
    """Per-column counts for one strip: k cubic layers, l subdivided layers, two transitions."""
    return {
        "cells": k + 48 * l + 74,
        "nodes": k + 8 * l + 13,
        "incidences": 8 * k + 192 * l + 298,
        "facets": 6 * k + 192 * l + 298,
        "edges": 12 * k + 288 * l + 448,
    }


def layered_strip(k: int, l: int) -> PeriodicMosaic:
    """One periodic column of the strip construction, built geometrically.

    From bottom to top: k cubes, a cube subdivided except in its bottom face,
    l fully subdivided cubes, and a cube subdivided except in its top face.
    """
    H = k + l + 2
    cube = convex_hull([_q(*p) for p in product((0, 1), repeat=3)])
    V = cube.vertices

    def plane_faces(z):
        out = set()
        on = {i for i, v in enumerate(V) if v[2] == z}
        for kdim in range(3):
            for f in cube.faces(kdim):
                if f <= on:
                    out.add(f)
        return out

    layers = []
    for z in range(H):
        t = _q(0, 0, z)
        if z < k:
            layers.append([cube.translate(t)])
        elif z == k:
            layers.append([P.translate(t) for P in partial_barycentric_cells(cube, plane_faces(0))])
        elif z < k + 1 + l:
            layers.append([P.translate(t) for P in partial_barycentric_cells(cube)])
        else:
            layers.append([P.translate(t) for P in partial_barycentric_cells(cube, plane_faces(1))])
    lat = [_q(1, 0, 0), _q(0, 1, 0), _q(0, 0, H)]
    M = PeriodicMosaic.from_cells(lat, [P for layer in layers for P in layer], True, f"strip({k},{l})")
    M.validate()
    return M


def layered_mix(recipe: LayerRecipe) -> MosaicStats:
    """Exact statistics of the layered construction.

    For explicit strips these are the per-period counts of the periodic
    stack.  For a ratio ``lam`` they are the limits as the strips widen with
    k/(k+l) -> lam; counts are then reported as None.
    """
    if recipe.strips:
        tot = {key: 0 for key in strip_counts(1, 1)}
        for k, l in recipe.strips:
            for key, val in strip_counts(k, l).items():
                tot[key] += val
        C, N, I = tot["cells"], tot["nodes"], tot["incidences"]
        n_bar, v_bar = mpq(I, N), mpq(I, C)
        N_f = tot["facets"] // 2
        return MosaicStats(
            3, n_bar, v_bar, mpq(tot["facets"], C), mpq(tot["edges"], C), harmonic(n_bar, v_bar),
            C, N, N_f, N + N_f - C, {}, {},
        )
    lam = recipe.lam
    mu = 1 - lam
    C = lam + 48 * mu
    N = lam + 8 * mu
    I = 8 * lam + 192 * mu
    n_bar, v_bar = I / N, I / C
    return MosaicStats(
        3, n_bar, v_bar, (6 * lam + 192 * mu) / C, (12 * lam + 288 * mu) / C, harmonic(n_bar, v_bar),
        None, None, None, None, {}, {},
    )


def _case2_sequence(h_star):
    """Dual-foam iterates of subdivided cubic: (k, n_k, h_k) until h_k drops below h_star."""
    n = mpq(24)
    k = 0
    while True:
        yield k, n, harmonic(n, mpq(4))
        n = 16 * n / (4 + n)
        k += 1


def harmonic_target(h_star, d: int = 3) -> LayerRecipe | IterationPlan:
    """A construction whose limiting harmonic degree is exactly h_star.

    For h_star >= 24/7 the layered mix ratio is solved in closed form.  Below
    that, take the first dual-foam iterate M_k with h_{k+1} <= h_star <= h_k
    and divide a fraction of its cells once more.
    """
    h = rational(h_star)
    if d != 3:
        raise OutOfRange("only d = 3 is supported")
    if not 3 < h <= 4:
        raise OutOfRange(f"h_star must lie in (3, 4], got {h}")
    if h >= mpq(24, 7):
        return LayerRecipe(lam=(192 - 56 * h) / (184 - 54 * h))
    seq = _case2_sequence(h)
    k, n, hk = next(seq)
    for k1, n1, hk1 in seq:
        if hk1 <= h <= hk:
            phi = (4 - h - 4 * h / n) / (4 * h - 12)
            return IterationPlan(k, phi, n)
        k, n, hk = k1, n1, hk1


def evaluate_target(plan: LayerRecipe | IterationPlan):
    """Exact limiting harmonic degree of a recipe or plan."""
    if isinstance(plan, LayerRecipe):
        return layered_mix(plan).h_bar
    phi, n = plan.fraction, plan.n_k
    return 4 * (1 + 3 * phi) / ((1 + 4 * phi) + 4 / n)
