"""Mosaics of the 2-sphere obtained by central projection of convex polyhedra."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations, product
from typing import Callable

import numpy as np

from .errors import DegenerateInput, OriginNotInterior, UnknownName
from .exact import format_number, mpq, parse_number, quad, sign, sqrt_of
from .geom import ConvexPolytope, convex_hull

__all__ = [
    "SphericalMosaic",
    "SphericalStats",
    "from_polyhedron",
    "spherical_stats",
    "polar_dual",
    "cell_angles",
    "cell_areas",
    "external_angles",
    "CATALOG",
    "catalog_names",
    "polyhedron",
    "read_off",
    "write_off",
]


@dataclass(frozen=True)
class SphericalMosaic:
    polytope: ConvexPolytope
    name: str = ""

    @property
    def cells(self) -> tuple:
        return tuple(tuple(f) for f in self.polytope.facets)

    @property
    def N_c(self) -> int:
        return len(self.polytope.facets)

    @property
    def N_v(self) -> int:
        return self.polytope.n_vertices

    @property
    def N_e(self) -> int:
        return len(self.polytope.edges)

    def points(self) -> np.ndarray:
        """Node positions on the unit sphere."""
        V = self.polytope.vertex_array()
        return V / np.linalg.norm(V, axis=1)[:, None]


@dataclass(frozen=True)
class SphericalStats:
    n_bar: mpq
    v_bar: mpq
    mu_bar: mpq
    h_bar: mpq
    omega_bar: float
    areas: tuple


def _origin_inside(P: ConvexPolytope) -> bool:
    return all(sign(b, 1e-12) > 0 for _, b in P.facet_planes())


def from_polyhedron(P: ConvexPolytope, name: str = "") -> SphericalMosaic:
    if P.dim != 3:
        raise DegenerateInput("need a 3-polytope")
    if not _origin_inside(P):
        raise OriginNotInterior("origin is not interior to the polyhedron")
    return SphericalMosaic(P, name)


def _angles(a, b, axis=None) -> np.ndarray:
    """Row-wise angle between a and b; signed about ``axis`` and taken mod 2 pi if given."""
    c = np.cross(a, b)
    cosv = np.einsum("ij,ij->i", a, b)
    if axis is None:
        return np.arctan2(np.linalg.norm(c, axis=1), cosv)
    return np.mod(np.arctan2(c @ axis, cosv), 2 * math.pi)


def _corner_index(S: SphericalMosaic):
    """Flat (corner, previous, next, cell) index arrays over all cells."""
    cur, prv, nxt, cell = [], [], [], []
    for k, f in enumerate(S.cells):
        m = len(f)
        cur.extend(f)
        prv.extend(f[j - 1] for j in range(m))
        nxt.extend(f[(j + 1) % m] for j in range(m))
        cell.extend([k] * m)
    return np.array(cur), np.array(prv), np.array(nxt), np.array(cell)


def _split(values: np.ndarray, S: SphericalMosaic) -> list[list[float]]:
    cuts = np.cumsum([len(f) for f in S.cells])[:-1]
    return [a.tolist() for a in np.split(values, cuts)]


def cell_angles(S: SphericalMosaic) -> list[list[float]]:
    """Interior angle of every spherical cell at each of its corners."""
    U = S.points()
    cur, prv, nxt, _ = _corner_index(S)
    u, p, q = U[cur], U[prv], U[nxt]
    a = p - np.einsum("ij,ij->i", u, p)[:, None] * u
    b = q - np.einsum("ij,ij->i", u, q)[:, None] * u
    return _split(_angles(a, b), S)


def cell_areas(S: SphericalMosaic) -> list[float]:
    """Spherical excess sum(alpha) - (n - 2) pi of each cell."""
    return [sum(row) - (len(row) - 2) * math.pi for row in cell_angles(S)]


def external_angles(S: SphericalMosaic) -> list[list[float]]:
    """External angle of each cell at each corner, seen from an interior point.

    The rays from an interior point q perpendicular to the edge great circles
    cut the cell into corner sectors; the sector angle at corner j is the
    external angle there.  They sum to 2 pi per cell.
    """
    U = S.points()
    cur, prv, nxt, cell = _corner_index(S)
    Q = np.zeros((S.N_c, 3))
    np.add.at(Q, cell, U[cur])
    Q /= np.linalg.norm(Q, axis=1)[:, None]
    q = Q[cell]
    # edge normals for the edges (prev, cur) and (cur, next)
    o_in = -np.cross(U[prv], U[cur])
    o_out = -np.cross(U[cur], U[nxt])
    o_in /= np.linalg.norm(o_in, axis=1)[:, None]
    o_out /= np.linalg.norm(o_out, axis=1)[:, None]
    t_in = o_in - np.einsum("ij,ij->i", o_in, q)[:, None] * q
    t_out = o_out - np.einsum("ij,ij->i", o_out, q)[:, None] * q
    c = np.cross(t_in, t_out)
    ang = np.mod(np.arctan2(np.einsum("ij,ij->i", c, q), np.einsum("ij,ij->i", t_in, t_out)), 2 * math.pi)
    return _split(ang, S)


def spherical_stats(S: SphericalMosaic) -> SphericalStats:
    Nc, Nv, Ne = S.N_c, S.N_v, S.N_e
    n = mpq(2 * Ne, Nv)
    v = mpq(2 * Ne, Nc)
    mu = mpq(4, Nc + Nv)
    h = n * v / (n + v)
    ints = cell_angles(S)
    exts = external_angles(S)
    total = sum(sum(r) for r in ints) + sum(sum(r) for r in exts)
    omega = total / (2 * Ne)
    areas = tuple(sum(r) - (len(r) - 2) * math.pi for r in ints)
    return SphericalStats(n, v, mu, h, omega, areas)


def polar_dual(P: ConvexPolytope) -> ConvexPolytope:
    """Polar polytope: one vertex n/b per facet plane n.x <= b of P."""
    if not _origin_inside(P):
        raise OriginNotInterior("origin is not interior to the polyhedron")
    pts = []
    for nrm, b in P.facet_planes():
        pts.append(tuple(c / b for c in nrm))
    if not P.exact:
        pts = [tuple(float(c) for c in p) for p in pts]
    return convex_hull(pts)


# ---------------------------------------------------------------------------
# catalog


def _signs(v, even: bool | None = None):
    """All sign choices on the nonzero entries of v."""
    idx = [i for i, c in enumerate(v) if c != 0]
    for s in product((1, -1), repeat=len(idx)):
        if even is not None and (s.count(-1) % 2 == 0) != even:
            continue
        w = list(v)
        for i, e in zip(idx, s):
            w[i] = w[i] * e
        yield tuple(w)


def _all_perms(v):
    return set(permutations(v))


def _cyclic(v):
    return {(v[0], v[1], v[2]), (v[1], v[2], v[0]), (v[2], v[0], v[1])}


def _even_perms(v):
    a, b, c = v
    return [(a, b, c), (b, c, a), (c, a, b)]


def _odd_perms(v):
    a, b, c = v
    return [(b, a, c), (a, c, b), (c, b, a)]


def _expand(bases, perm, even=None):
    pts = set()
    for base in bases:
        for s in _signs(base, even):
            pts.update(perm(s))
    return sorted(pts, key=lambda p: tuple(float(c) for c in p))


def _floats(pts):
    # the large icosahedral solids go through the float hull; exact Q[sqrt 5]
    # hulls of 60-120 points are too slow and add nothing to the counts
    return [tuple(float(c) for c in p) for p in pts]


PHI = quad(mpq(1, 2), mpq(1, 2), 5)
_phi = (1 + math.sqrt(5)) / 2


def _tetrahedron():
    return convex_hull([(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)])


def _cube():
    return convex_hull(list(product((-1, 1), repeat=3)))


def _octahedron():
    return convex_hull(_expand([(1, 0, 0)], _all_perms))


def _icosahedron():
    return convex_hull(_expand([(0, mpq(1), PHI)], _cyclic))


def _dodecahedron():
    ip = PHI - 1
    return convex_hull(
        _expand([(1, 1, 1)], _cyclic) + _expand([(0, ip, PHI)], _cyclic)
    )


def _truncated_tetrahedron():
    pts = [p for p in _expand([(3, 1, 1)], _all_perms) if sum(c < 0 for c in p) % 2 == 0]
    return convex_hull(pts)


def _cuboctahedron():
    return convex_hull(_expand([(1, 1, 0)], _all_perms))


def _truncated_octahedron():
    return convex_hull(_expand([(0, 1, 2)], _all_perms))


def _truncated_cube():
    s = sqrt_of(2) - 1
    return convex_hull(_expand([(s, mpq(1), mpq(1))], _all_perms))


def _rhombicuboctahedron():
    s = sqrt_of(2) + 1
    return convex_hull(_expand([(mpq(1), mpq(1), s)], _all_perms))


def _truncated_cuboctahedron():
    s = sqrt_of(2)
    return convex_hull(_expand([(mpq(1), 1 + s, 1 + 2 * s)], _all_perms))


def _icosidodecahedron():
    h = mpq(1, 2)
    return convex_hull(_floats(
        _expand([(0, 0, PHI)], _cyclic) + _expand([(h, PHI / 2, PHI * PHI / 2)], _cyclic)
    ))


def _truncated_icosahedron():
    return convex_hull(_floats(
        _expand([(0, mpq(1), 3 * PHI), (mpq(1), 2 + PHI, 2 * PHI), (PHI, mpq(2), 2 * PHI + 1)], _cyclic)
    ))


def _truncated_dodecahedron():
    ip = PHI - 1
    return convex_hull(_floats(
        _expand([(0, ip, 2 + PHI), (ip, PHI, 2 * PHI), (PHI, mpq(2), PHI + 1)], _cyclic)
    ))


def _rhombicosidodecahedron():
    p2, p3 = PHI * PHI, PHI * PHI * PHI
    return convex_hull(_floats(
        _expand([(mpq(1), mpq(1), p3), (p2, PHI, 2 * PHI), (2 + PHI, 0, p2)], _cyclic)
    ))


def _truncated_icosidodecahedron():
    ip = PHI - 1
    p2 = PHI * PHI
    bases = [
        (ip, ip, 3 + PHI),
        (2 * ip, PHI, 1 + 2 * PHI),
        (ip, p2, 3 * PHI - 1),
        (2 * PHI - 1, mpq(2), 2 + PHI),
        (PHI, mpq(3), 2 * PHI),
    ]
    return convex_hull(_floats(_expand(bases, _cyclic)))


def _tribonacci() -> float:
    return (1 + (19 + 3 * math.sqrt(33)) ** (1 / 3) + (19 - 3 * math.sqrt(33)) ** (1 / 3)) / 3


def _snub_cube():
    t = _tribonacci()
    base = (1.0, 1 / t, t)
    pts = []
    for s in _signs(base):
        plus = sum(c > 0 for c in s)
        pts.extend(_even_perms(s) if plus % 2 == 0 else _odd_perms(s))
    return convex_hull(pts)


def _snub_dodecahedron():
    p = _phi
    xi = np.roots([1, 0, -2, -p])
    xi = float(max(r.real for r in xi if abs(r.imag) < 1e-12))
    a = xi - 1 / xi
    b = xi * p + p * p + p / xi
    bases = [
        (2 * a, 2.0, 2 * b),
        (a + b / p + p, -a * p + b + 1 / p, a / p + b * p - 1),
        (a + b / p - p, a * p - b + 1 / p, a / p + b * p + 1),
        (-a / p + b * p + 1, -a + b / p + p, a * p + b - 1 / p),
        (-a / p + b * p - 1, a - b / p + p, a * p + b + 1 / p),
    ]
    pts = []
    for base in bases:
        for s in _signs(base):
            if sum(c > 0 for c in s) % 2 == 0:
                pts.extend(_even_perms(s))
    return convex_hull(pts)


def _prism(n: int):
    def build():
        z = math.sin(math.pi / n)
        ring = [(math.cos(2 * math.pi * k / n), math.sin(2 * math.pi * k / n)) for k in range(n)]
        return convex_hull([(x, y, z) for x, y in ring] + [(x, y, -z) for x, y in ring])

    return build


def _antiprism(n: int):
    def build():
        e = 2 * math.sin(math.pi / n)
        lat = 2 * math.sin(math.pi / (2 * n))
        z = math.sqrt(e * e - lat * lat) / 2
        pts = []
        for k in range(n):
            a = 2 * math.pi * k / n
            b = a + math.pi / n
            pts.append((math.cos(a), math.sin(a), z))
            pts.append((math.cos(b), math.sin(b), -z))
        return convex_hull(pts)

    return build


CATALOG: dict[str, Callable[[], ConvexPolytope]] = {
    "tetrahedron": _tetrahedron,
    "cube": _cube,
    "octahedron": _octahedron,
    "dodecahedron": _dodecahedron,
    "icosahedron": _icosahedron,
    "truncated_tetrahedron": _truncated_tetrahedron,
    "cuboctahedron": _cuboctahedron,
    "truncated_cube": _truncated_cube,
    "truncated_octahedron": _truncated_octahedron,
    "rhombicuboctahedron": _rhombicuboctahedron,
    "truncated_cuboctahedron": _truncated_cuboctahedron,
    "snub_cube": _snub_cube,
    "icosidodecahedron": _icosidodecahedron,
    "truncated_dodecahedron": _truncated_dodecahedron,
    "truncated_icosahedron": _truncated_icosahedron,
    "rhombicosidodecahedron": _rhombicosidodecahedron,
    "truncated_icosidodecahedron": _truncated_icosidodecahedron,
    "snub_dodecahedron": _snub_dodecahedron,
}
for _n in range(3, 13):
    CATALOG[f"prism{_n}"] = _prism(_n)
    CATALOG[f"antiprism{_n}"] = _antiprism(_n)


def catalog_names() -> list[str]:
    return list(CATALOG)


def polyhedron(name: str) -> ConvexPolytope:
    try:
        return CATALOG[name]()
    except KeyError:
        raise UnknownName(f"unknown polyhedron {name!r}") from None


# ---------------------------------------------------------------------------
# OFF text


def read_off(text: str) -> ConvexPolytope:
    """Parse OFF text.  Integer and p/q coordinates are kept exact."""
    tokens = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            tokens.extend(line.split())
    if tokens and tokens[0].upper() == "OFF":
        tokens = tokens[1:]
    try:
        nv, nf = int(tokens[0]), int(tokens[1])
        pos = 3
        verts = []
        for _ in range(nv):
            verts.append(tuple(_parse_coord(t) for t in tokens[pos:pos + 3]))
            pos += 3
        facets = []
        for _ in range(nf):
            k = int(tokens[pos])
            facets.append([int(t) for t in tokens[pos + 1:pos + 1 + k]])
            pos += 1 + k
    except (IndexError, ValueError) as exc:
        raise DegenerateInput(f"malformed OFF input: {exc}") from exc
    P = convex_hull(verts)
    if P.n_vertices != nv or len(P.facets) != nf:
        raise DegenerateInput("OFF polyhedron is not strictly convex or facets disagree with its hull")
    # keep the file's facet lists, reoriented to match the hull
    if sorted(sorted(f) for f in facets) != sorted(sorted(verts.index(P.vertices[i]) for i in f) for f in P.facets):
        raise DegenerateInput("OFF facets do not match the convex hull")
    return P


def _parse_coord(t: str):
    if "sqrt" not in t and "/" not in t and any(ch in t for ch in ".eE"):
        return float(t)
    return parse_number(t)


def write_off(P: ConvexPolytope) -> str:
    def fmt(c):
        return repr(float(c)) if isinstance(c, float) else format_number(c)

    lines = ["OFF", f"{P.n_vertices} {len(P.facets)} {len(P.edges)}"]
    lines += [" ".join(fmt(c) for c in v) for v in P.vertices]
    lines += [" ".join(str(x) for x in (len(f), *f)) for f in P.facets]
    return "\n".join(lines) + "\n"
