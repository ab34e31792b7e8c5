"""Finite polytopal complexes: assembly, incidences and validity checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import NotFound, OverlappingCells
from .exact import sign
from .geom import ConvexPolytope, convex_hull, cross, cross2, dot, normality_radii, sub

__all__ = [
    "CellComplex",
    "ValidityReport",
    "assemble",
    "validate",
    "node_degree",
    "cell_degree",
    "separated",
    "meet_face_to_face",
]


@dataclass
class CellComplex:
    """Cells plus every face, identified by the set of its node indices.

    ``faces[k]`` lists the k-faces (frozensets of node ids) for k = 0..d, with
    ``faces[d]`` the cells.  ``incidence[(k, j)][a]`` is the set of j-face ids
    incident to k-face ``a``, for any k != j.
    """

    dimension: int
    nodes: list
    cells: list
    cell_nodes: list
    faces: dict
    incidence: dict
    containment: list
    nonface_junctions: list = field(default_factory=list)

    def counts(self) -> tuple:
        return tuple(len(self.faces[k]) for k in range(self.dimension + 1))

    @property
    def face_to_face(self) -> bool:
        return not self.nonface_junctions

    def node_index(self, coords) -> int:
        try:
            return self._node_lookup[tuple(coords)]
        except KeyError:
            raise NotFound(f"no node at {coords}") from None

    def regular_nodes(self) -> list[int]:
        """Nodes that are a vertex of every cell containing them."""
        deg = [len(s) for s in self.incidence[(0, self.dimension)]]
        return [i for i in range(len(self.nodes)) if deg[i] == self.containment[i]]


@dataclass(frozen=True)
class ValidityReport:
    face_to_face: bool
    normal: bool
    r_min: float
    R_max: float
    convex: bool
    euler_ok: bool


# ---------------------------------------------------------------------------
# pairwise predicates


def _axes(A: ConvexPolytope, B: ConvexPolytope) -> list:
    axes = [n for n, _ in A.facet_planes()] + [n for n, _ in B.facet_planes()]
    if A.dim == 3:
        VA, VB = A.vertices, B.vertices
        for a0, a1 in A.edges:
            da = sub(VA[a1], VA[a0])
            for b0, b1 in B.edges:
                c = cross(da, sub(VB[b1], VB[b0]))
                if any(sign(x, 0.0) != 0 for x in c):
                    axes.append(c)
    return axes


def _separates(A, B, axis) -> bool:
    pa = [dot(axis, v) for v in A.vertices]
    pb = [dot(axis, v) for v in B.vertices]
    return sign(min(pb) - max(pa), 0.0) >= 0 or sign(min(pa) - max(pb), 0.0) >= 0


def separated(A: ConvexPolytope, B: ConvexPolytope) -> bool:
    """True iff the interiors of A and B are disjoint (separating axis test).

    Candidate axes are screened in floating point; the decision is confirmed
    exactly when the coordinates are exact.
    """
    axes = _axes(A, B)
    VA, VB = A.vertex_array(), B.vertex_array()
    scale = max(1.0, float(np.abs(VA).max()), float(np.abs(VB).max()))
    F = np.array([[float(c) for c in ax] for ax in axes])
    F /= np.linalg.norm(F, axis=1)[:, None]
    pa, pb = VA @ F.T, VB @ F.T
    gap = np.maximum(pb.min(axis=0) - pa.max(axis=0), pa.min(axis=0) - pb.max(axis=0))
    order = np.argsort(-gap)
    exact = A.exact and B.exact
    for k in order:
        if gap[k] < -1e-9 * scale:
            break
        if not exact or _separates(A, B, axes[k]):
            return True
    if not exact:
        return False
    return any(_separates(A, B, ax) for ax in axes)


def _segments_cross(p0, p1, q0, q1) -> bool:
    """Segments meet in a single point interior to both."""
    d, e, w = sub(p1, p0), sub(q1, q0), sub(q0, p0)
    if len(p0) == 2:
        n = cross2(d, e)
        if sign(n, 0.0) == 0:
            return False
        s, t = cross2(w, e) / n, cross2(w, d) / n
    else:
        n = cross(d, e)
        nn = dot(n, n)
        if sign(nn, 0.0) == 0 or sign(dot(w, n), 0.0) != 0:
            return False
        s, t = dot(cross(w, e), n) / nn, dot(cross(w, d), n) / nn
    return 0 < s < 1 and 0 < t < 1


def _face_sets(P: ConvexPolytope) -> set:
    out = set()
    for k in range(P.dim):
        for f in P.faces(k):
            out.add(frozenset(P.vertices[i] for i in f))
    return out


def meet_face_to_face(A: ConvexPolytope, B: ConvexPolytope) -> bool:
    """True iff A and B (with disjoint interiors) meet in a common face or not at all."""
    WA = frozenset(v for v in A.vertices if B.contains(v))
    WB = frozenset(v for v in B.vertices if A.contains(v))
    if WA != WB:
        return False
    if WA and (WA not in _face_sets(A) or WA not in _face_sets(B)):
        return False
    VA, VB = A.vertices, B.vertices
    for a0, a1 in A.edges:
        for b0, b1 in B.edges:
            if _segments_cross(VA[a0], VA[a1], VB[b0], VB[b1]):
                return False
    return True


def _boxes_touch(A: ConvexPolytope, B: ConvexPolytope, tol: float = 1e-9) -> bool:
    la, ha = A.bbox()
    lb, hb = B.bbox()
    return bool(np.all(la <= hb + tol) and np.all(lb <= ha + tol))


# ---------------------------------------------------------------------------


def assemble(cells: Sequence[ConvexPolytope], check_overlaps: bool = True) -> CellComplex:
    """Build a complex, identifying nodes and faces by exact coordinates.

    Raises OverlappingCells if two cells share interior points.  Pairs that
    touch without meeting in a common face are recorded in
    ``nonface_junctions`` rather than rejected.
    """
    cells = list(cells)
    if not cells:
        raise ValueError("no cells")
    d = cells[0].dim
    lookup: dict = {}
    nodes: list = []
    cell_nodes = []
    for C in cells:
        ids = []
        for v in C.vertices:
            if v not in lookup:
                lookup[v] = len(nodes)
                nodes.append(v)
            ids.append(lookup[v])
        cell_nodes.append(tuple(ids))

    faces: dict[int, list] = {k: [] for k in range(d + 1)}
    fid: dict[int, dict] = {k: {} for k in range(d + 1)}

    def face_id(k, s):
        t = fid[k]
        if s not in t:
            t[s] = len(faces[k])
            faces[k].append(s)
        return t[s]

    for i in range(len(nodes)):
        face_id(0, frozenset((i,)))
    down: dict[tuple, dict] = {}
    for c, C in enumerate(cells):
        ids = cell_nodes[c]
        cid = face_id(d, frozenset(ids))
        if cid != c:
            raise OverlappingCells(f"cells {cid} and {c} coincide")
        per_dim = {k: set() for k in range(d)}
        per_dim[0] = set(ids)
        edge_ids = {}
        for a, b in C.edges:
            s = frozenset((ids[a], ids[b]))
            e = face_id(1, s)
            edge_ids[frozenset((a, b))] = e
            per_dim[1].add(e)
            down.setdefault((0, 1), {})[e] = set(s)
        if d == 3:
            for f in C.facets:
                s = frozenset(ids[i] for i in f)
                g = face_id(2, s)
                per_dim[2].add(g)
                down.setdefault((0, 2), {})[g] = set(s)
                down.setdefault((1, 2), {}).setdefault(g, set()).update(
                    edge_ids[frozenset((f[k], f[(k + 1) % len(f)]))] for k in range(len(f))
                )
        for k in range(d):
            down.setdefault((k, d), {})[c] = per_dim[k]

    incidence: dict[tuple, list] = {}
    for (k, j), m in down.items():
        up = [set() for _ in faces[k]]
        dn = [set() for _ in faces[j]]
        for b, subs in m.items():
            dn[b] = set(subs)
            for a in subs:
                up[a].add(b)
        incidence[(k, j)] = up
        incidence[(j, k)] = dn

    # pairwise geometric checks
    junctions = []
    for a, b in combinations(range(len(cells)), 2):
        A, B = cells[a], cells[b]
        if not _boxes_touch(A, B):
            continue
        if check_overlaps and not separated(A, B):
            raise OverlappingCells(f"cells {a} and {b} overlap")
        if not meet_face_to_face(A, B):
            junctions.append((a, b))

    # containment counts for nodes
    containment = [0] * len(nodes)
    arr = np.array([[float(x) for x in p] for p in nodes])
    for C in cells:
        lo, hi = C.bbox()
        cand = np.nonzero(np.all((arr >= lo - 1e-9) & (arr <= hi + 1e-9), axis=1))[0]
        for i in cand:
            if C.contains(nodes[i]):
                containment[i] += 1

    X = CellComplex(d, nodes, cells, cell_nodes, faces, incidence, containment, junctions)
    X._node_lookup = lookup
    return X


def _resolve_node(X: CellComplex, node) -> int:
    if isinstance(node, (int, np.integer)):
        if not 0 <= node < len(X.nodes):
            raise NotFound(f"node {node} out of range")
        return int(node)
    return X.node_index(node)


def node_degree(X: CellComplex, node) -> int:
    """Number of cells having the node as a vertex (containment is not enough)."""
    return len(X.incidence[(0, X.dimension)][_resolve_node(X, node)])


def cell_degree(X: CellComplex, cell: int) -> int:
    if not 0 <= cell < len(X.cells):
        raise NotFound(f"cell {cell} out of range")
    return len(X.cell_nodes[cell])


def validate(X: CellComplex) -> ValidityReport:
    radii = [normality_radii(C) for C in X.cells]
    r_min = min(r for r, _ in radii)
    R_max = max(R for _, R in radii)
    convex = True
    for C in X.cells:
        H = convex_hull(C.vertices)
        if H.n_vertices != C.n_vertices or len(H.facets) != len(C.facets):
            convex = False
            break
    euler_ok = X.dimension != 3 or all(C.euler_characteristic() == 2 for C in X.cells)
    return ValidityReport(
        face_to_face=X.face_to_face,
        normal=bool(r_min > 0 and np.isfinite(R_max)),
        r_min=r_min,
        R_max=R_max,
        convex=convex,
        euler_ok=euler_ok,
    )
