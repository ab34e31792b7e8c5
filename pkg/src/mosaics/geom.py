"""Convex polytopes in the plane and in space.

Coordinates are exact (``mpq`` or :class:`~mosaics.exact.QuadraticNumber`) or
plain floats.  Combinatorics and volumes stay exact when the input is exact;
solid angles are always evaluated in double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateInput, NotAVertex
from .exact import is_exact, mpq, rational, sign

__all__ = [
    "ConvexPolytope",
    "SolidAngle",
    "convex_hull",
    "internal_solid_angle",
    "external_solid_angle",
    "cone_solid_angle",
    "polar_cone",
    "vertex_cone",
    "normal_cone",
    "tetrahedral_decomposition",
    "tetra_volume",
    "normality_radii",
    "chebyshev_ball",
    "min_enclosing_ball",
    "truncate_vertices",
    "simplex",
    "polygon",
    "prism",
    "SNAP_TOL",
]

#: Plane-distance tolerance for hulls of floating-point input (scaled by the
#: largest coordinate magnitude).
SNAP_TOL = 1e-12

Point = tuple


# ---------------------------------------------------------------------------
# small vector helpers (work for any exact or float scalar type)


def sub(p, q):
    return tuple(a - b for a, b in zip(p, q))


def add(p, q):
    return tuple(a + b for a, b in zip(p, q))


def scale(p, s):
    return tuple(a * s for a in p)


def dot(p, q):
    it = iter(zip(p, q))
    a, b = next(it)
    acc = a * b
    for a, b in it:
        acc = acc + a * b
    return acc


def cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def det3(u, v, w):
    return dot(u, cross(v, w))


def cross2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _exact_points(points) -> bool:
    return all(is_exact(c) for p in points for c in p)


def _as_exact_or_float(points):
    """Normalize coordinates: ints/Fractions become mpq, floats stay floats."""
    out = []
    for p in points:
        q = []
        for c in p:
            if isinstance(c, float) or isinstance(c, np.floating):
                q.append(float(c))
            elif isinstance(c, (int, np.integer)):
                q.append(mpq(int(c)))
            elif is_exact(c):
                q.append(c if not isinstance(c, int) else mpq(c))
            else:
                q.append(rational(c))
        out.append(tuple(q))
    return out


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SolidAngle:
    """A planar (radians) or solid (steradians) angle with its tolerance."""

    value: float
    tolerance: float = 1e-9

    def __float__(self):
        return self.value


class ConvexPolytope:
    """A convex polygon (d=2) or polyhedron (d=3).

    ``vertices`` are coordinate tuples.  ``facets`` are vertex-index cycles
    ordered counter-clockwise when seen from outside (d=3), or directed edges
    ``(i, j)`` of the counter-clockwise boundary (d=2).
    """

    __slots__ = ("vertices", "facets", "_cache")

    def __init__(self, vertices: Sequence[Point], facets: Sequence[Sequence[int]]):
        self.vertices = tuple(tuple(v) for v in vertices)
        self.facets = tuple(tuple(f) for f in facets)
        self._cache = {}

    # -- basic properties --------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def exact(self) -> bool:
        if "exact" not in self._cache:
            self._cache["exact"] = _exact_points(self.vertices)
        return self._cache["exact"]

    @property
    def edges(self) -> tuple:
        """Sorted vertex-index pairs."""
        if "edges" not in self._cache:
            if self.dim == 2:
                es = {tuple(sorted(f)) for f in self.facets}
            else:
                es = set()
                for f in self.facets:
                    for k in range(len(f)):
                        a, b = f[k], f[(k + 1) % len(f)]
                        es.add((a, b) if a < b else (b, a))
            self._cache["edges"] = tuple(sorted(es))
        return self._cache["edges"]

    def faces(self, k: int) -> tuple:
        """Faces of dimension k as frozensets of vertex indices (k = d gives the cell)."""
        d = self.dim
        if k == 0:
            return tuple(frozenset((i,)) for i in range(self.n_vertices))
        if k == 1:
            return tuple(frozenset(e) for e in self.edges)
        if k == d - 1:
            return tuple(frozenset(f) for f in self.facets)
        if k == d:
            return (frozenset(range(self.n_vertices)),)
        raise ValueError(f"no faces of dimension {k} in dimension {d}")

    def f_vector(self) -> tuple:
        return tuple(len(self.faces(k)) for k in range(self.dim))

    def neighbors(self, i: int) -> tuple:
        """Vertices adjacent to vertex i along an edge."""
        nb = self._cache.get("nb")
        if nb is None:
            nb = [[] for _ in self.vertices]
            for a, b in self.edges:
                nb[a].append(b)
                nb[b].append(a)
            nb = [tuple(x) for x in nb]
            self._cache["nb"] = nb
        return nb[i]

    def facets_at(self, i: int) -> tuple:
        """Indices of facets containing vertex i."""
        fa = self._cache.get("fa")
        if fa is None:
            fa = [[] for _ in self.vertices]
            for k, f in enumerate(self.facets):
                for v in f:
                    fa[v].append(k)
            fa = [tuple(x) for x in fa]
            self._cache["fa"] = fa
        return fa[i]

    def facet_planes(self) -> tuple:
        """Outward (normal, offset) pairs; interior satisfies normal . x <= offset."""
        if "planes" not in self._cache:
            planes = []
            V = self.vertices
            for f in self.facets:
                if self.dim == 2:
                    a, b = V[f[0]], V[f[1]]
                    n = (b[1] - a[1], a[0] - b[0])
                else:
                    n = _polygon_normal([V[i] for i in f])
                planes.append((n, dot(n, V[f[0]])))
            self._cache["planes"] = tuple(planes)
        return self._cache["planes"]

    def facet_planes_float(self) -> tuple[np.ndarray, np.ndarray]:
        if "fplanes" not in self._cache:
            ns = np.array([[float(c) for c in n] for n, _ in self.facet_planes()])
            bs = np.array([float(b) for _, b in self.facet_planes()])
            norms = np.linalg.norm(ns, axis=1)
            self._cache["fplanes"] = (ns / norms[:, None], bs / norms)
        return self._cache["fplanes"]

    def vertex_array(self) -> np.ndarray:
        if "varr" not in self._cache:
            self._cache["varr"] = np.array([[float(c) for c in v] for v in self.vertices])
        return self._cache["varr"]

    # -- measures ------------------------------------------------------------
    def volume(self):
        """Exact area (d=2) or volume (d=3) for exact coordinates."""
        if "volume" not in self._cache:
            V = self.vertices
            if self.dim == 2:
                order = self.boundary_cycle()
                acc = 0
                for k in range(len(order)):
                    acc = acc + cross2(V[order[k]], V[order[(k + 1) % len(order)]])
                vol = acc / 2 if not isinstance(acc, float) else acc / 2.0
            else:
                o = V[0]
                acc = 0
                for f in self.facets:
                    if 0 in f:
                        continue
                    a = sub(V[f[0]], o)
                    for k in range(1, len(f) - 1):
                        acc = acc + det3(a, sub(V[f[k]], o), sub(V[f[k + 1]], o))
                vol = acc / 6 if not isinstance(acc, float) else acc / 6.0
            self._cache["volume"] = vol
        return self._cache["volume"]

    def centroid(self):
        """Average of the vertices (exact for exact input)."""
        n = self.n_vertices
        acc = self.vertices[0]
        for v in self.vertices[1:]:
            acc = add(acc, v)
        if self.exact:
            return tuple(c / n for c in acc)
        return tuple(c / float(n) for c in acc)

    def boundary_cycle(self) -> tuple:
        """d=2 only: vertex indices in counter-clockwise order."""
        if "cycle" not in self._cache:
            nxt = {a: b for a, b in self.facets}
            start = self.facets[0][0]
            order = [start]
            while nxt[order[-1]] != start:
                order.append(nxt[order[-1]])
            self._cache["cycle"] = tuple(order)
        return self._cache["cycle"]

    def contains(self, x, strict: bool = False, tol: float = 0.0) -> bool:
        for n, b in self.facet_planes():
            s = sign(b - dot(n, x), tol)
            if s < 0 or (strict and s == 0):
                return False
        return True

    def bbox(self) -> tuple[np.ndarray, np.ndarray]:
        if "bbox" not in self._cache:
            a = self.vertex_array()
            self._cache["bbox"] = (a.min(axis=0), a.max(axis=0))
        return self._cache["bbox"]

    def is_simplex(self) -> bool:
        return self.n_vertices == self.dim + 1

    def translate(self, t) -> "ConvexPolytope":
        P = ConvexPolytope([add(v, t) for v in self.vertices], self.facets)
        return P

    def euler_characteristic(self) -> int:
        if self.dim == 2:
            return len(self.vertices) - len(self.facets)
        return len(self.vertices) - len(self.edges) + len(self.facets)

    def __repr__(self):
        return f"ConvexPolytope(d={self.dim}, v={self.n_vertices}, facets={len(self.facets)})"


def _polygon_normal(pts):
    """Normal of a planar convex polygon given counter-clockwise (exact-safe)."""
    a = pts[0]
    for k in range(1, len(pts) - 1):
        n = cross(sub(pts[k], a), sub(pts[k + 1], a))
        if any(sign(c, 0.0) != 0 for c in n):
            return n
    raise DegenerateInput("degenerate facet")


# ---------------------------------------------------------------------------
# hulls


def _hull2_indices(points, tol: float = 0.0) -> list[int]:
    """Strict convex hull (monotone chain) returning ccw vertex indices."""
    idx = sorted(range(len(points)), key=lambda i: points[i])
    uniq = []
    for i in idx:
        if not uniq or points[uniq[-1]] != points[i]:
            uniq.append(i)
    if len(uniq) < 3:
        raise DegenerateInput("fewer than 3 distinct points")

    def turn(o, a, b):
        return sign(cross2(sub(points[a], points[o]), sub(points[b], points[o])), tol)

    lower = []
    for i in uniq:
        while len(lower) >= 2 and turn(lower[-2], lower[-1], i) <= 0:
            lower.pop()
        lower.append(i)
    upper = []
    for i in reversed(uniq):
        while len(upper) >= 2 and turn(upper[-2], upper[-1], i) <= 0:
            upper.pop()
        upper.append(i)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise DegenerateInput("all points are collinear")
    return hull


def _hull3_triangles_exact(P):
    """Incremental hull returning outward triangles (index triples)."""
    n = len(P)
    i0 = 0
    i1 = next((i for i in range(n) if P[i] != P[i0]), None)
    if i1 is None:
        raise DegenerateInput("all points coincide")
    i2 = None
    for i in range(n):
        c = cross(sub(P[i1], P[i0]), sub(P[i], P[i0]))
        if any(x != 0 for x in c):
            i2 = i
            break
    if i2 is None:
        raise DegenerateInput("all points are collinear")
    n012 = cross(sub(P[i1], P[i0]), sub(P[i2], P[i0]))
    i3 = None
    for i in range(n):
        if dot(n012, sub(P[i], P[i0])) != 0:
            i3 = i
            break
    if i3 is None:
        raise DegenerateInput("all points lie in a plane")
    if dot(n012, sub(P[i3], P[i0])) > 0:
        i1, i2 = i2, i1
    faces = {}
    fid = 0
    Pf = np.array([[float(c) for c in x] for x in P])
    span = float(np.abs(Pf).max()) or 1.0

    def make(a, b, c):
        nonlocal fid
        nrm = cross(sub(P[b], P[a]), sub(P[c], P[a]))
        off = dot(nrm, P[a])
        nf = np.array([float(x) for x in nrm])
        faces[fid] = (a, b, c, nrm, off, nf, float(off), 1e-9 * float(np.abs(nf).sum()) * span)
        fid += 1

    def above(f, p):
        # float filter; exact test only when the float value is inconclusive
        g = float(f[5] @ Pf[p]) - f[6]
        if g > f[7]:
            return True
        if g < -f[7]:
            return False
        return dot(f[3], P[p]) > f[4]

    make(i0, i1, i2)
    make(i0, i2, i3)
    make(i0, i3, i1)
    make(i1, i3, i2)
    used = {i0, i1, i2, i3}
    for p in range(n):
        if p in used:
            continue
        visible = [k for k, f in faces.items() if above(f, p)]
        if not visible:
            continue
        vis = set(visible)
        dedges = {}
        for k in visible:
            a, b, c = faces[k][:3]
            for e in ((a, b), (b, c), (c, a)):
                dedges[e] = k
        horizon = [e for e in dedges if (e[1], e[0]) not in dedges]
        for k in vis:
            del faces[k]
        for a, b in horizon:
            make(a, b, p)
    return [f[:3] for f in faces.values()]


def _canonical_plane(n, off):
    k = next(i for i, c in enumerate(n) if c != 0)
    s = abs(n[k])
    return tuple(c / s for c in n), off / s


def _facets_from_planes(P, planes, tol):
    """Merge coplanar hull triangles: per plane, the strict 2D hull of points on it."""
    facets = []
    for n, off in planes:
        on = [i for i, x in enumerate(P) if sign(dot(n, x) - off, tol) == 0]
        # project by dropping the dominant normal axis
        k = max(range(3), key=lambda i: abs(float(n[i])))
        keep = [a for a in range(3) if a != k]
        proj = [(P[i][keep[0]], P[i][keep[1]]) for i in on]
        cyc = [on[j] for j in _hull2_indices(proj, tol)]
        a, b, c = P[cyc[0]], P[cyc[1]], P[cyc[2]]
        if sign(dot(cross(sub(b, a), sub(c, a)), n), 0.0 if tol == 0 else 0.0) < 0:
            cyc.reverse()
        facets.append(cyc)
    return facets


def _finish(P, facets) -> ConvexPolytope:
    used = sorted({i for f in facets for i in f})
    remap = {old: new for new, old in enumerate(used)}
    return ConvexPolytope([P[i] for i in used], [[remap[i] for i in f] for f in facets])


def convex_hull(points: Iterable[Sequence], tol: float | None = None) -> ConvexPolytope:
    """Convex hull with the full face lattice.

    Exact input is handled exactly (incremental algorithm plus exact merging
    of coplanar triangles).  Float input goes through Qhull and coplanar
    triangles are merged within ``SNAP_TOL`` relative tolerance.
    """
    P = _as_exact_or_float(points)
    if not P:
        raise DegenerateInput("no points")
    d = len(P[0])
    exact = _exact_points(P)
    # drop duplicates, preserving first occurrence
    seen = {}
    uniq = []
    for p in P:
        if p not in seen:
            seen[p] = len(uniq)
            uniq.append(p)
    P = uniq
    if len(P) < d + 1:
        raise DegenerateInput("need at least d+1 distinct points")
    if d == 2:
        if exact:
            cyc = _hull2_indices(P)
        else:
            s = max(1.0, max(abs(c) for p in P for c in p))
            cyc = _hull2_indices(P, (SNAP_TOL if tol is None else tol) * s * s)
        verts = [P[i] for i in cyc]
        m = len(verts)
        return ConvexPolytope(verts, [(k, (k + 1) % m) for k in range(m)])
    if d != 3:
        raise ValueError("only d = 2 or 3 is supported")
    if exact:
        tris = _hull3_triangles_exact(P)
        planes = {}
        for a, b, c in tris:
            nrm = cross(sub(P[b], P[a]), sub(P[c], P[a]))
            key = _canonical_plane(nrm, dot(nrm, P[a]))
            planes.setdefault(key, None)
        facets = _facets_from_planes(P, list(planes), 0.0)
        return _finish(P, facets)
    return _hull3_float(P, SNAP_TOL if tol is None else tol)


def _hull3_float(P, tol):
    from scipy.spatial import ConvexHull
    from scipy.spatial import QhullError

    arr = np.asarray(P, dtype=float)
    s = max(1.0, float(np.abs(arr).max()))
    try:
        h = ConvexHull(arr)
    except QhullError as exc:
        raise DegenerateInput(str(exc)) from exc
    # merge coplanar Qhull triangles: a triangle joins the first plane holding all its corners
    G = np.empty((len(h.equations), 4))
    ng = 0
    for simp, eq in zip(h.simplices, h.equations):
        if ng:
            res = np.abs(arr[simp] @ G[:ng, :3].T - G[:ng, 3])
            if np.any((G[:ng, :3] @ eq[:3] > 0.5) & np.all(res <= tol * s, axis=0)):
                continue
        G[ng, :3], G[ng, 3] = eq[:3], -eq[3]
        ng += 1
    planes = [(tuple(float(c) for c in g[:3]), float(g[3])) for g in G[:ng]]
    facets = []
    for n, off in planes:
        on = [int(i) for i in np.nonzero(np.abs(arr @ np.array(n) - off) <= tol * s)[0]]
        k = int(np.argmax(np.abs(n)))
        keep = [a for a in range(3) if a != k]
        proj = [(P[i][keep[0]], P[i][keep[1]]) for i in on]
        cyc = [on[j] for j in _hull2_indices(proj, tol * s * s)]
        a, b, c = arr[cyc[0]], arr[cyc[1]], arr[cyc[2]]
        if dot(cross(b - a, c - a), n) < 0:
            cyc.reverse()
        facets.append(cyc)
    return _finish(P, facets)


# ---------------------------------------------------------------------------
# explicit constructors


def polygon(points: Sequence[Sequence]) -> ConvexPolytope:
    """Polygon from vertices already in convex position (any orientation)."""
    P = _as_exact_or_float(points)
    area2 = 0
    for k in range(len(P)):
        area2 = area2 + cross2(P[k], P[(k + 1) % len(P)])
    if sign(area2, 0.0) == 0:
        raise DegenerateInput("zero-area polygon")
    if sign(area2, 0.0) < 0:
        P = P[::-1]
    m = len(P)
    return ConvexPolytope(P, [(k, (k + 1) % m) for k in range(m)])


def simplex(points: Sequence[Sequence]) -> ConvexPolytope:
    """Triangle or tetrahedron with correctly oriented facets."""
    P = _as_exact_or_float(points)
    d = len(P[0])
    if len(P) != d + 1:
        raise DegenerateInput("a simplex needs d+1 points")
    if d == 2:
        return polygon(P)
    vol = det3(sub(P[1], P[0]), sub(P[2], P[0]), sub(P[3], P[0]))
    if sign(vol, 0.0) == 0:
        raise DegenerateInput("flat tetrahedron")
    if sign(vol, 0.0) < 0:
        P = [P[0], P[2], P[1], P[3]]
    # with det(p1-p0, p2-p0, p3-p0) > 0 the outward cycles are:
    return ConvexPolytope(P, [(0, 2, 1), (0, 1, 3), (1, 2, 3), (0, 3, 2)])


def prism(base: ConvexPolytope, z0, z1) -> ConvexPolytope:
    """Right prism over a polygon between heights z0 < z1."""
    cyc = base.boundary_cycle()
    m = len(cyc)
    bottom = [tuple(base.vertices[i]) + (z0,) for i in cyc]
    top = [tuple(base.vertices[i]) + (z1,) for i in cyc]
    verts = bottom + top
    facets = [tuple(reversed(range(m))), tuple(range(m, 2 * m))]
    for k in range(m):
        k1 = (k + 1) % m
        facets.append((k, k1, m + k1, m + k))
    return ConvexPolytope(verts, facets)


# ---------------------------------------------------------------------------
# solid angles


def _unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def _order_around_axis(gens: list[np.ndarray], keys: list | None = None) -> list[int]:
    axis = np.sum(gens, axis=0)
    nrm = np.linalg.norm(axis)
    if nrm < 1e-12:
        raise DegenerateInput("cone is not pointed")
    axis = axis / nrm
    helper = np.eye(3)[int(np.argmin(np.abs(axis)))]
    e1 = _unit(np.cross(axis, helper))
    e2 = np.cross(axis, e1)
    ang = [math.atan2(float(g @ e2), float(g @ e1)) for g in gens]
    idx = list(range(len(gens)))
    if keys is None:
        keys = [tuple(g) for g in gens]
    idx.sort(key=lambda i: (ang[i], keys[i]))
    return idx


def cone_solid_angle(generators: Sequence[Sequence[float]]) -> float:
    """Solid angle (steradians) of a pointed convex cone given by its extreme rays.

    The rays are ordered by azimuth around their mean direction and the
    spherical polygon is fan-triangulated; each triangle's excess comes from
    the Van Oosterom-Strackee formula.
    """
    gens = [_unit(g) for g in generators]
    if len(gens) < 3:
        raise DegenerateInput("a 3D cone needs at least 3 rays")
    order = _order_around_axis(gens, [tuple(float(c) for c in g) for g in generators])
    u = [gens[i] for i in order]
    total = 0.0
    a = u[0]
    for k in range(1, len(u) - 1):
        b, c = u[k], u[k + 1]
        num = float(np.dot(a, np.cross(b, c)))
        den = 1.0 + float(a @ b + b @ c + c @ a)
        total += 2.0 * math.atan2(abs(num), den)
    return total


def polar_cone(generators: Sequence[Sequence[float]]) -> list[np.ndarray]:
    """Generators of the polar cone {y : y . x <= 0 for all x in the cone}."""
    gens = [_unit(g) for g in generators]
    order = _order_around_axis(gens)
    u = [gens[i] for i in order]
    m = len(u)
    out = []
    for k in range(m):
        w = np.cross(u[k], u[(k + 1) % m])
        # the polar ray is the face normal pointing away from the cone
        if any(float(w @ x) > 1e-12 for x in u):
            w = -w
        out.append(_unit(w))
    return out


def _check_vertex(cell: ConvexPolytope, i: int):
    if not (0 <= i < cell.n_vertices):
        raise NotAVertex(f"vertex index {i} out of range")


def vertex_cone(cell: ConvexPolytope, i: int) -> list[np.ndarray]:
    """Edge directions spanning the tangent cone at vertex i."""
    _check_vertex(cell, i)
    V = cell.vertex_array()
    return [V[j] - V[i] for j in cell.neighbors(i)]


def normal_cone(cell: ConvexPolytope, i: int) -> list[np.ndarray]:
    """Outer facet normals spanning the normal cone at vertex i."""
    _check_vertex(cell, i)
    ns, _ = cell.facet_planes_float()
    return [ns[k] for k in cell.facets_at(i)]


def _planar_angle(cell: ConvexPolytope, i: int) -> float:
    V = cell.vertex_array()
    a, b = cell.neighbors(i)
    u, w = V[a] - V[i], V[b] - V[i]
    return math.atan2(abs(float(u[0] * w[1] - u[1] * w[0])), float(u @ w))


def internal_solid_angle(cell: ConvexPolytope, vertex_index: int) -> SolidAngle:
    """Measure of the tangent cone at a vertex (radians in d=2)."""
    _check_vertex(cell, vertex_index)
    if cell.dim == 2:
        return SolidAngle(_planar_angle(cell, vertex_index), 1e-12)
    return SolidAngle(cone_solid_angle(vertex_cone(cell, vertex_index)))


def external_solid_angle(cell: ConvexPolytope, vertex_index: int) -> SolidAngle:
    """Measure of the cone of outer normals at a vertex (pi - alpha in d=2)."""
    _check_vertex(cell, vertex_index)
    if cell.dim == 2:
        return SolidAngle(math.pi - _planar_angle(cell, vertex_index), 1e-12)
    return SolidAngle(cone_solid_angle(normal_cone(cell, vertex_index)))


# ---------------------------------------------------------------------------
# tetrahedral decomposition


def tetra_volume(t) -> object:
    """Unsigned volume of a tetrahedron given as 4 points (exact when possible)."""
    v = det3(sub(t[1], t[0]), sub(t[2], t[0]), sub(t[3], t[0]))
    v = abs(v)
    return v / 6 if not isinstance(v, float) else v / 6.0


def tetrahedral_decomposition(P: ConvexPolytope) -> list[tuple]:
    """Split a polyhedron into at most 2v-7 tetrahedra by coning from one vertex.

    Faces away from the apex are fan-triangulated from their own first vertex.
    The apex is the vertex whose incident faces absorb the most triangles,
    which minimizes the count.
    """
    if P.dim != 3:
        raise ValueError("tetrahedral decomposition needs d = 3")
    if P.n_vertices < 4:
        raise DegenerateInput("need at least 4 vertices")
    load = [0] * P.n_vertices
    for f in P.facets:
        for v in f:
            load[v] += len(f) - 2
    apex = max(range(P.n_vertices), key=lambda v: (load[v], -v))
    V = P.vertices
    tets = []
    for f in P.facets:
        if apex in f:
            continue
        for k in range(1, len(f) - 1):
            tets.append((V[apex], V[f[0]], V[f[k]], V[f[k + 1]]))
    return tets


# ---------------------------------------------------------------------------
# normality radii


def chebyshev_ball(P: ConvexPolytope) -> tuple[np.ndarray, float]:
    """Largest inscribed ball (centre, radius) via a linear program.

    The LP solution is polished by solving the active constraints exactly in
    least squares, which recovers closed-form radii to ~1e-15.
    """
    from scipy.optimize import linprog

    A, b = P.facet_planes_float()
    d = P.dim
    c = np.zeros(d + 1)
    c[-1] = -1.0
    A_ub = np.hstack([A, np.ones((len(A), 1))])
    res = linprog(c, A_ub=A_ub, b_ub=b, bounds=[(None, None)] * d + [(0, None)], method="highs")
    if not res.success:
        raise DegenerateInput(f"Chebyshev LP failed: {res.message}")
    x = res.x
    slack = b - A_ub @ x
    active = slack < 1e-9 * max(1.0, float(np.abs(b).max()))
    if active.sum() >= d + 1:
        sol, *_ = np.linalg.lstsq(A_ub[active], b[active], rcond=None)
        res_lp = np.abs(b[active] - A_ub[active] @ x).max()
        res_ls = np.abs(b[active] - A_ub[active] @ sol).max()
        if res_ls < res_lp and np.all(b - A_ub @ sol >= -1e-12) and sol[-1] > 0:
            x = sol
    return x[:d], float(x[-1])


def _ball_through(R: list[np.ndarray]) -> tuple[np.ndarray | None, float]:
    if not R:
        return None, -1.0
    p0 = R[0]
    if len(R) == 1:
        return p0.copy(), 0.0
    D = np.array([r - p0 for r in R[1:]])
    A = 2.0 * D @ D.T
    rhs = np.einsum("ij,ij->i", D, D)
    lam = np.linalg.lstsq(A, rhs, rcond=None)[0]
    c = p0 + lam @ D
    return c, float(np.sum((c - p0) ** 2))


def _welzl(P: list[np.ndarray], R: list[np.ndarray], dmax: int):
    c, r2 = _ball_through(R)
    if len(R) == dmax + 1:
        return c, r2
    for i, p in enumerate(P):
        if c is None or float(np.sum((p - c) ** 2)) > r2 * (1 + 1e-12) + 1e-300:
            c, r2 = _welzl(P[:i], R + [p], dmax)
    return c, r2


def min_enclosing_ball(points: Sequence[Sequence[float]], seed: int = 0) -> tuple[np.ndarray, float]:
    """Smallest enclosing ball by Welzl's randomized incremental method."""
    arr = np.asarray([[float(c) for c in p] for p in points])
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(arr))
    P = [arr[i] for i in order]
    c, r2 = _welzl(P, [], arr.shape[1])
    return c, math.sqrt(max(r2, 0.0))


def normality_radii(P: ConvexPolytope) -> tuple[float, float]:
    """(inradius of the largest inscribed ball, radius of the smallest enclosing ball)."""
    _, r = chebyshev_ball(P)
    _, R = min_enclosing_ball(P.vertices)
    return r, R


# ---------------------------------------------------------------------------
# vertex truncation


def truncate_vertices(P: ConvexPolytope, cuts: dict[int, dict[int, Point]]) -> tuple[ConvexPolytope, dict]:
    """Cut off simple vertices of a polyhedron.

    ``cuts[i][j]`` is the cut point on edge (i, j) for every neighbour j of a
    cut vertex i.  Returns the truncated polytope and a map from each cut
    vertex to the index of its new triangular facet.  The caller is
    responsible for the cut planes being separating.
    """
    V = P.vertices
    for i, pts in cuts.items():
        if set(pts) != set(P.neighbors(i)) or len(pts) != 3:
            raise DegenerateInput(f"vertex {i} is not simple or cut points are missing")
    new_verts: list = []
    index: dict = {}

    def vid(key, coords):
        if key not in index:
            index[key] = len(new_verts)
            new_verts.append(coords)
        return index[key]

    for i in range(len(V)):
        if i not in cuts:
            vid(("v", i), V[i])
    facets = []
    for f in P.facets:
        cyc = []
        m = len(f)
        for k in range(m):
            v = f[k]
            if v in cuts:
                prev, nxt = f[k - 1], f[(k + 1) % m]
                cyc.append(vid(("e", v, prev), cuts[v][prev]))
                cyc.append(vid(("e", v, nxt), cuts[v][nxt]))
            else:
                cyc.append(vid(("v", v), V[v]))
        facets.append(cyc)
    new_facet = {}
    for i, pts in cuts.items():
        a, b, c = (vid(("e", i, j), pts[j]) for j in sorted(pts))
        A, B, C = new_verts[a], new_verts[b], new_verts[c]
        if sign(dot(cross(sub(B, A), sub(C, A)), sub(V[i], A)), 0.0) < 0:
            b, c = c, b
        new_facet[i] = len(facets)
        facets.append([a, b, c])
    return ConvexPolytope(new_verts, facets), new_facet
