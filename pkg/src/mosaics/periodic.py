"""Lattice-periodic mosaics and their exact per-period statistics."""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable

import numpy as np

from .complex import meet_face_to_face, separated
from .errors import DimensionMismatch, InvalidTiling, NonPositiveParameter, NotFaceToFace
from .exact import QuadraticNumber, floor_exact, format_number, mpq, parse_number, rational, sign
from .geom import (
    ConvexPolytope,
    convex_hull,
    external_solid_angle,
    internal_solid_angle,
    polygon,
)

__all__ = [
    "PeriodicCell",
    "PeriodicMosaic",
    "MosaicStats",
    "NijMatrix",
    "stats",
    "measure_nij",
    "nij_from_params",
    "dual_nij",
    "average_total_angle",
    "angle_tiling_sums",
    "windowed_stats",
    "to_json",
    "from_json",
    "harmonic",
]


def harmonic(n, v):
    if isinstance(n, int) and isinstance(v, int):
        n = mpq(n)
    return n * v / (n + v)


# ---------------------------------------------------------------------------
# small exact linear algebra


def _scalar(c):
    return c if isinstance(c, QuadraticNumber) else rational(c)


def _mat_inv(M):
    n = len(M)
    A = [list(row) + [mpq(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            raise InvalidTiling("lattice vectors are linearly dependent")
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        A[col] = [x / p for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [tuple(row[n:]) for row in A]


def _det(M):
    if len(M) == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    a, b, c = M
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def _vecmat(x, M):
    """Row vector times matrix."""
    d = len(M[0])
    out = []
    for j in range(d):
        acc = x[0] * M[0][j]
        for i in range(1, len(x)):
            acc = acc + x[i] * M[i][j]
        out.append(acc)
    return tuple(out)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PeriodicCell:
    """One orbit representative: its vertices as (node orbit, lattice shift)."""

    verts: tuple
    polytope: ConvexPolytope = field(compare=False, repr=False)


class PeriodicMosaic:
    """A mosaic invariant under a translation lattice.

    ``lattice`` rows are the translation vectors.  ``nodes`` holds one
    fractional position in [0, 1)^d per node orbit.  Cartesian position of
    node i shifted by s is (nodes[i] + s) . lattice.
    """

    def __init__(self, lattice, nodes, cells, face_to_face: bool = True, name: str = ""):
        self.lattice = tuple(tuple(r) for r in lattice)
        self.dimension = len(self.lattice)
        self.nodes = tuple(tuple(n) for n in nodes)
        self.cells = tuple(cells)
        self.face_to_face = bool(face_to_face)
        self.name = name
        self._cache: dict = {}

    # -- construction ------------------------------------------------------
    @classmethod
    def from_cells(
        cls,
        lattice,
        polytopes: Iterable[ConvexPolytope],
        face_to_face: bool = True,
        name: str = "",
    ) -> "PeriodicMosaic":
        """Reduce Cartesian cells to orbit representatives.

        Each cell is translated so that its vertex centroid lies in [0,1)^d in
        lattice coordinates; translates of an already seen cell are dropped.
        """
        lattice = tuple(tuple(_scalar(c) for c in r) for r in lattice)
        inv = _mat_inv(lattice)
        reps: dict = {}
        for P in polytopes:
            cf = _vecmat(P.centroid(), inv)
            t = tuple(floor_exact(c) for c in cf)
            key = tuple(c - s for c, s in zip(cf, t))
            if key in reps:
                continue
            fr = []
            for v in P.vertices:
                f = _vecmat(v, inv)
                sh = tuple(floor_exact(c) for c in f)
                fr.append((tuple(c - s for c, s in zip(f, sh)), tuple(a - b for a, b in zip(sh, t))))
            shift_vec = _vecmat(tuple(mpq(-s) for s in t), lattice)
            reps[key] = (P.translate(shift_vec), fr)
        node_keys = sorted({f for _, fr in reps.values() for f, _ in fr})
        node_id = {k: i for i, k in enumerate(node_keys)}
        cells = []
        for key in sorted(reps):
            P, fr = reps[key]
            cells.append(PeriodicCell(tuple((node_id[f], s) for f, s in fr), P))
        return cls(lattice, node_keys, cells, face_to_face, name)

    # -- geometry ----------------------------------------------------------
    def position(self, node: int, shift=None):
        f = self.nodes[node]
        if shift is not None:
            f = tuple(a + b for a, b in zip(f, shift))
        return _vecmat(f, self.lattice)

    def lattice_vector(self, t):
        return _vecmat(tuple(mpq(x) for x in t), self.lattice)

    def cell_polytope(self, k: int, shift=None) -> ConvexPolytope:
        P = self.cells[k].polytope
        if shift is None or not any(shift):
            return P
        return P.translate(self.lattice_vector(shift))

    def patch(self, extent: int = 1, origin=None) -> list[ConvexPolytope]:
        """All cells translated by shifts in {0..extent-1}^d (plus origin)."""
        d = self.dimension
        origin = origin or (0,) * d
        out = []
        for t in product(range(extent), repeat=d):
            t = tuple(a + b for a, b in zip(t, origin))
            for k in range(len(self.cells)):
                out.append(self.cell_polytope(k, t))
        return out

    def lattice_float(self) -> np.ndarray:
        if "Lf" not in self._cache:
            self._cache["Lf"] = np.array([[float(c) for c in r] for r in self.lattice])
        return self._cache["Lf"]

    # -- validation --------------------------------------------------------
    def volume(self):
        return abs(_det(self.lattice))

    def validate(self, full: bool = False) -> None:
        """Check the tiling property.

        Always: independent lattice, exact cell volumes summing to the period
        volume, one representative per orbit.  With ``full``: every pair of a
        representative and a nearby translate is interior-disjoint, and meets
        face-to-face when the mosaic claims to.
        """
        det = _det(self.lattice)
        if sign(det, 0.0) == 0:
            raise InvalidTiling("lattice vectors are linearly dependent")
        total = 0
        for c in self.cells:
            total = total + c.polytope.volume()
        if total != abs(det):
            raise InvalidTiling(f"cell volumes sum to {total}, period volume is {abs(det)}")
        keys = {self._cell_key(k) for k in range(len(self.cells))}
        if len(keys) != len(self.cells):
            raise InvalidTiling("duplicate orbit representatives")
        if full:
            self._validate_pairs()

    def _cell_key(self, k: int):
        return _canon(self.cells[k].verts)

    def _validate_pairs(self) -> None:
        Lf = self.lattice_float()
        Linv = np.linalg.inv(Lf)
        d = self.dimension
        fr_lo, fr_hi = [], []
        for c in self.cells:
            lo, hi = c.polytope.bbox()
            corners = np.array(list(product(*zip(lo, hi))))
            f = corners @ Linv
            fr_lo.append(f.min(axis=0))
            fr_hi.append(f.max(axis=0))
        for a, ca in enumerate(self.cells):
            A = ca.polytope
            la, ha = A.bbox()
            for b, cb in enumerate(self.cells):
                lo = np.floor(fr_lo[a] - fr_hi[b]).astype(int) - 1
                hi = np.ceil(fr_hi[a] - fr_lo[b]).astype(int) + 1
                for t in product(*[range(lo[i], hi[i] + 1) for i in range(d)]):
                    if a == b and not any(t):
                        continue
                    tv = np.array(t, dtype=float) @ Lf
                    lb, hb = cb.polytope.bbox()
                    if np.any(lb + tv > ha + 1e-9) or np.any(la > hb + tv + 1e-9):
                        continue
                    B = self.cell_polytope(b, t)
                    if not separated(A, B):
                        raise InvalidTiling(f"cell {a} overlaps cell {b} shifted by {t}")
                    if self.face_to_face and not meet_face_to_face(A, B):
                        raise InvalidTiling(f"cells {a} and {b}+{t} do not meet face-to-face")

    # -- equality and misc -------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, PeriodicMosaic):
            return NotImplemented
        return (
            self.lattice == other.lattice
            and self.nodes == other.nodes
            and [c.verts for c in self.cells] == [c.verts for c in other.cells]
            and self.face_to_face == other.face_to_face
        )

    __hash__ = None

    def __repr__(self):
        return (
            f"PeriodicMosaic({self.name or 'unnamed'}, d={self.dimension}, "
            f"cells={len(self.cells)}, nodes={len(self.nodes)})"
        )


def _canon(elems) -> frozenset:
    """Translation-canonical form of a set of (node, shift) elements."""
    m = min(elems)
    s = m[1]
    return frozenset((n, tuple(a - b for a, b in zip(sh, s))) for n, sh in elems)


# ---------------------------------------------------------------------------
# statistics


@dataclass(frozen=True)
class MosaicStats:
    """Exact per-period averages and counts."""

    dimension: int
    n_bar: object
    v_bar: object
    f_bar: object
    e_bar: object
    h_bar: object
    N_c: int
    N_v: int
    N_f: int
    N_e: int
    node_degrees: dict
    cell_degrees: dict

    def row(self) -> tuple:
        return (self.n_bar, self.v_bar, self.f_bar, self.h_bar)


def _face_orbits(M: PeriodicMosaic):
    """Edge and 2-face orbits (sets of (node, shift)) plus per-cell counts."""
    if "faces" in M._cache:
        return M._cache["faces"]
    edges: dict = {}
    twofaces: dict = {}
    for c in M.cells:
        P, vs = c.polytope, c.verts
        for a, b in P.edges:
            edges.setdefault(_canon((vs[a], vs[b])), None)
        if M.dimension == 3:
            for f in P.facets:
                key = _canon([vs[i] for i in f])
                twofaces.setdefault(key, len(f))
    M._cache["faces"] = (edges, twofaces)
    return edges, twofaces


def stats(M: PeriodicMosaic) -> MosaicStats:
    """Exact averages (n, v, f, e, h) from per-period incidence counts."""
    if "stats" in M._cache:
        return M._cache["stats"]
    N_c = len(M.cells)
    N_v = len(M.nodes)
    if N_c == 0 or N_v == 0:
        raise InvalidTiling("empty mosaic")
    node_deg = Counter()
    for c in M.cells:
        for n, _ in c.verts:
            node_deg[n] += 1
    if len(node_deg) != N_v:
        raise InvalidTiling("some node orbit is not a vertex of any cell")
    incid = sum(len(c.verts) for c in M.cells)
    edges, twofaces = _face_orbits(M)
    n_bar = mpq(incid, N_v)
    v_bar = mpq(incid, N_c)
    f_bar = mpq(sum(len(c.polytope.facets) for c in M.cells), N_c)
    e_bar = mpq(sum(len(c.polytope.edges) for c in M.cells), N_c)
    N_e = len(edges)
    N_f = len(twofaces) if M.dimension == 3 else N_e
    st = MosaicStats(
        dimension=M.dimension,
        n_bar=n_bar,
        v_bar=v_bar,
        f_bar=f_bar,
        e_bar=e_bar,
        h_bar=harmonic(n_bar, v_bar),
        N_c=N_c,
        N_v=N_v,
        N_f=N_f,
        N_e=N_e,
        node_degrees=dict(sorted(Counter(node_deg.values()).items())),
        cell_degrees=dict(sorted(Counter(len(c.verts) for c in M.cells).items())),
    )
    M._cache["stats"] = st
    return st


# ---------------------------------------------------------------------------
# incidence matrix


class NijMatrix:
    """4x4 matrix of average incidences between i-faces and j-faces (d = 3)."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(tuple(rational(x) if not isinstance(x, float) else x for x in row) for row in entries)
        if len(self.entries) != 4 or any(len(r) != 4 for r in self.entries):
            raise DimensionMismatch("an incidence matrix is 4x4")

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, NijMatrix):
            return NotImplemented
        return self.entries == other.entries

    __hash__ = None

    def diff(self, other: "NijMatrix") -> tuple:
        return tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries))

    def rows(self) -> list[list]:
        return [list(r) for r in self.entries]

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.entries)
        return f"NijMatrix({body})"


def nij_from_params(v, f, n) -> NijMatrix:
    """The incidence matrix of a face-to-face spatial mosaic from (v, f, n)."""
    v, f, n = rational(v), rational(f), rational(n)
    if v <= 0 or f <= 0 or n <= 0:
        raise NonPositiveParameter("v, f and n must be positive")
    n01 = (f - 2) * n / v + 2
    n02 = (f - 2) * n / v + n
    n12 = 2 * (v + f - 2) * n / ((f - 2) * n + 2 * v)
    n20 = 2 * (v - 2) / f + 2
    one = mpq(1)
    return NijMatrix(
        [
            [one, n01, n02, n],
            [mpq(2), one, n12, n12],
            [n20, n20, one, mpq(2)],
            [v, v + f - 2, f, one],
        ]
    )


def dual_nij(A: NijMatrix) -> NijMatrix:
    return NijMatrix([[A[3 - i, 3 - j] for j in range(4)] for i in range(4)])


def measure_nij(M: PeriodicMosaic) -> NijMatrix:
    """Count face incidences over one period (face-to-face spatial mosaics)."""
    if M.dimension != 3:
        raise DimensionMismatch("the incidence matrix is defined for d = 3")
    if not M.face_to_face:
        raise NotFaceToFace("incidence counts need a face-to-face mosaic")
    edges, twofaces = _face_orbits(M)
    N = [len(M.nodes), len(edges), len(twofaces), len(M.cells)]
    inc = {}
    inc[(0, 1)] = 2 * N[1]
    inc[(0, 2)] = sum(twofaces.values())
    inc[(1, 2)] = inc[(0, 2)]
    inc[(0, 3)] = sum(len(c.verts) for c in M.cells)
    inc[(1, 3)] = sum(len(c.polytope.edges) for c in M.cells)
    inc[(2, 3)] = sum(len(c.polytope.facets) for c in M.cells)
    ent = [[None] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(4):
            if i == j:
                ent[i][j] = mpq(1)
            else:
                ent[i][j] = mpq(inc[(min(i, j), max(i, j))], N[i])
    return NijMatrix(ent)


# ---------------------------------------------------------------------------
# angles


def _angle_table(M: PeriodicMosaic):
    if "angles" not in M._cache:
        rows = []
        for k, c in enumerate(M.cells):
            P = c.polytope
            for i, (n, _) in enumerate(c.verts):
                rows.append((k, n, internal_solid_angle(P, i).value, external_solid_angle(P, i).value))
        M._cache["angles"] = rows
    return M._cache["angles"]


def average_total_angle(M: PeriodicMosaic) -> tuple[float, float, float]:
    """Mean internal, external and total angle over all (cell, vertex) pairs of a period."""
    if not M.face_to_face:
        raise NotFaceToFace("angle averages are defined for face-to-face mosaics")
    rows = _angle_table(M)
    oi = math.fsum(r[2] for r in rows) / len(rows)
    oe = math.fsum(r[3] for r in rows) / len(rows)
    return oi, oe, oi + oe


def angle_tiling_sums(M: PeriodicMosaic) -> tuple[list[float], list[float]]:
    """Per node orbit: sum of internal angles; per cell: sum of external angles."""
    rows = _angle_table(M)
    node = [[] for _ in M.nodes]
    cell = [[] for _ in M.cells]
    for k, n, oi, oe in rows:
        node[n].append(oi)
        cell[k].append(oe)
    return [math.fsum(x) for x in node], [math.fsum(x) for x in cell]


# ---------------------------------------------------------------------------
# windowed estimator


def windowed_stats(M: PeriodicMosaic, L) -> tuple:
    """Averages over the nodes and cells whose position lies in the box [0, L)^d.

    Cell position is the vertex centroid.  Node degrees are counted by
    enumerating every cell translate around the box, independently of the
    per-period bookkeeping.  Returns exact (n_bar, v_bar, h_bar).
    """
    d = M.dimension
    L = rational(L)
    Lf = M.lattice_float()
    Linv = np.linalg.inv(Lf)
    reach = max(
        float(np.max(np.linalg.norm(c.polytope.vertex_array() - np.mean(c.polytope.vertex_array(), axis=0), axis=1)))
        for c in M.cells
    )
    margin = reach + 1e-6
    box_corners = np.array(list(product(*[(-margin, float(L) + margin)] * d)))
    fr = box_corners @ Linv
    lo = np.floor(fr.min(axis=0)).astype(int) - 1
    hi = np.ceil(fr.max(axis=0)).astype(int) + 1
    shifts = list(product(*[range(lo[i], hi[i] + 1) for i in range(d)]))

    def inside(x):
        return all(0 <= c < L for c in x)

    def near(x):
        return all(-margin <= float(c) <= float(L) + margin for c in x)

    centroids = [c.polytope.centroid() for c in M.cells]
    incidence = Counter()
    cell_count = 0
    cell_vertices = 0
    for t in shifts:
        tv = M.lattice_vector(t)
        for k, c in enumerate(M.cells):
            x = tuple(a + b for a, b in zip(centroids[k], tv))
            if not near(x):
                continue
            for n, s in c.verts:
                incidence[(n, tuple(a + b for a, b in zip(s, t)))] += 1
            if inside(x):
                cell_count += 1
                cell_vertices += len(c.verts)
    node_count = 0
    node_incid = 0
    for t in shifts:
        for n in range(len(M.nodes)):
            if inside(M.position(n, t)):
                node_count += 1
                node_incid += incidence[(n, t)]
    n_bar = mpq(node_incid, node_count)
    v_bar = mpq(cell_vertices, cell_count)
    return n_bar, v_bar, harmonic(n_bar, v_bar)


# ---------------------------------------------------------------------------
# interchange format


def to_json(M: PeriodicMosaic) -> str:
    obj = {
        "dimension": M.dimension,
        "lattice": [[format_number(c) for c in r] for r in M.lattice],
        "vertices": [[format_number(c) for c in n] for n in M.nodes],
        "cells": [[{"v": n, "shift": list(s)} for n, s in c.verts] for c in M.cells],
        "face_to_face": M.face_to_face,
    }
    if M.name:
        obj["name"] = M.name
    return json.dumps(obj, indent=1) + "\n"


def from_json(text: str) -> PeriodicMosaic:
    obj = json.loads(text)
    d = int(obj["dimension"])
    lattice = [tuple(parse_number(c) for c in r) for r in obj["lattice"]]
    nodes = [tuple(parse_number(c) for c in n) for n in obj["vertices"]]
    if len(lattice) != d or any(len(r) != d for r in lattice):
        raise DimensionMismatch("lattice shape does not match the dimension")
    cells = []
    for cell in obj["cells"]:
        verts = tuple((int(e["v"]), tuple(int(x) for x in e["shift"])) for e in cell)
        pts = [_vecmat(tuple(a + b for a, b in zip(nodes[n], s)), lattice) for n, s in verts]
        P = polygon(pts) if d == 2 else convex_hull(pts)
        if P.vertices != tuple(pts):
            raise InvalidTiling("cell vertices are not in convex position / stored order")
        cells.append(PeriodicCell(verts, P))
    return PeriodicMosaic(lattice, nodes, cells, bool(obj["face_to_face"]), obj.get("name", ""))
