"""Monte Carlo degree statistics for random mosaics.

Poisson-Voronoi and Poisson-Delaunay mosaics are measured on the flat
3-torus, so there is no boundary and the Euler relations hold exactly for
every replicate.  Hyperplane arrangements use closed-form counts with an
independent sign-vector oracle.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

from . import _kernels
from .errors import DegenerateInput, TooFewPlanes, TooFewPoints
from .exact import mpq

__all__ = [
    "PoissonSample",
    "PeriodicTriangulation",
    "periodic_delaunay",
    "circumspheres",
    "check_empty_circumspheres",
    "Replicate",
    "RandomStats",
    "run_replicate",
    "voronoi_delaunay_stats",
    "voronoi_face_counts",
    "HyperplaneStats",
    "hyperplane_arrangement_stats",
    "hyperplane_arrangement_oracle",
]

_SHIFTS = np.array(list(product((-1, 0, 1), repeat=3)), dtype=np.int64)


@dataclass(frozen=True)
class PoissonSample:
    """Points of a Poisson process of the given intensity in the unit torus."""

    points: np.ndarray
    intensity: float
    seed: object = None

    @classmethod
    def draw(cls, intensity: float, seed=None) -> "PoissonSample":
        ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
        rng = np.random.default_rng(ss)
        n = int(rng.poisson(intensity))
        return cls(rng.random((n, 3)), float(intensity), seed)

    @classmethod
    def fixed(cls, points, seed=None) -> "PoissonSample":
        pts = np.mod(np.asarray(points, dtype=float), 1.0)
        return cls(pts, float(len(pts)), seed)

    def __len__(self):
        return len(self.points)


@dataclass
class PeriodicTriangulation:
    """Delaunay tetrahedra of a periodic point set, one per translation orbit.

    ``base[t]`` holds the point ids of tetrahedron t and ``shift[t]`` the
    integer lattice translate of each vertex; the anchor vertex has shift 0.
    """

    points: np.ndarray
    base: np.ndarray
    shift: np.ndarray
    n_edges: int
    n_faces: int
    margin: float
    node_degree: np.ndarray = field(repr=False, default=None)

    @property
    def n_vertices(self) -> int:
        return len(self.points)

    @property
    def n_tets(self) -> int:
        return len(self.base)

    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_faces - self.n_tets

    def coords(self) -> np.ndarray:
        """(T, 4, 3) vertex coordinates of each tetrahedron."""
        return self.points[self.base] + self.shift


def circumspheres(X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Centres and squared radii of tetrahedra given as (T, 4, 3) arrays."""
    a = X[:, 0]
    D = X[:, 1:] - a[:, None, :]
    rhs = 0.5 * (D ** 2).sum(axis=2)
    c = np.linalg.solve(D, rhs[..., None])[..., 0]
    return a + c, (c ** 2).sum(axis=1)


def _unique_rows(codes: np.ndarray, n_points: int) -> tuple[np.ndarray, np.ndarray]:
    """Unique sorted code rows with multiplicities.

    The first code of a canonical row is an anchor with shift 0, so only its
    point id matters; rows are packed into one int64 when that fits.
    """
    M = 125 * n_points
    k = codes.shape[1]
    if n_points * M ** (k - 1) < 2 ** 62:
        key = codes[:, 0] // 125
        for j in range(1, k):
            key = key * M + codes[:, j]
        _, first, counts = np.unique(key, return_index=True, return_counts=True)
        return codes[first], counts
    return np.unique(codes, axis=0, return_counts=True)


def _sub_simplices(base, shift, k):
    idx = list(combinations(range(4), k))
    B = np.concatenate([base[:, list(c)] for c in idx])
    S = np.concatenate([shift[:, list(c)] for c in idx])
    return B, S


def _attempt(pts: np.ndarray, margin: float):
    N = len(pts)
    ext, eb, es = [], [], []
    for s in _SHIFTS:
        q = pts + s
        mask = np.all((q >= -margin) & (q <= 1 + margin), axis=1)
        ext.append(q[mask])
        eb.append(np.nonzero(mask)[0])
        es.append(np.broadcast_to(s, (int(mask.sum()), 3)))
    ext = np.concatenate(ext)
    eb = np.concatenate(eb).astype(np.int64)
    es = np.concatenate(es).astype(np.int64)

    from scipy.spatial import Delaunay

    simp = Delaunay(ext).simplices
    codes, keep = _kernels.canonical_simplices(eb[simp], es[simp])
    sel = simp[keep]
    base, shift = eb[sel], es[sel]
    if len(_unique_rows(codes[keep], N)[0]) != len(sel):
        return None, "duplicate tetrahedra"

    X = ext[sel]
    D = X[:, 1:] - X[:, :1]
    scale = np.abs(D).max(axis=(1, 2)) ** 3
    if np.any(np.abs(np.linalg.det(D)) <= 1e-12 * scale):
        return None, "degenerate tetrahedra"
    centers, r2 = circumspheres(X)
    r = np.sqrt(r2)
    inside = np.all((centers - r[:, None] >= -margin) & (centers + r[:, None] <= 1 + margin), axis=1)
    if not inside.all():
        return None, "circumsphere leaves the padded window"

    fc, fcount = _unique_rows(_kernels.canonical_simplices(*_sub_simplices(base, shift, 3))[0], N)
    if not np.all(fcount == 2):
        return None, "unpaired triangle"
    ec, _ = _unique_rows(_kernels.canonical_simplices(*_sub_simplices(base, shift, 2))[0], N)
    deg = np.bincount((ec // 125).ravel(), minlength=N)
    tri = PeriodicTriangulation(pts, base, shift, len(ec), len(fc), margin, deg)
    if tri.euler_characteristic() != 0:
        return None, "Euler characteristic is not zero"
    return tri, ""


def periodic_delaunay(sample: PoissonSample | np.ndarray, margin: float | None = None) -> PeriodicTriangulation:
    """Delaunay triangulation of the 3-torus spanned by the points.

    Copies of the points within ``margin`` of the unit box are added, the
    Euclidean triangulation is computed and one tetrahedron per orbit is
    kept.  The result is accepted only if every kept circumsphere lies inside
    the padded window (so nothing outside can violate it), every triangle
    borders exactly two tetrahedra and V - E + F - T = 0.  Otherwise the
    margin grows; at full margin a tiny seed-derived perturbation breaks
    cospherical ties.
    """
    if not isinstance(sample, PoissonSample):
        sample = PoissonSample.fixed(sample)
    pts = np.asarray(sample.points, dtype=float)
    N = len(pts)
    if N < 5:
        raise TooFewPoints("need at least 5 points")
    m = min(1.0, 3.5 * N ** (-1 / 3)) if margin is None else margin
    jittered = False
    while True:
        tri, why = _attempt(pts, m)
        if tri is not None:
            return tri
        # cospherical ties do not go away with a wider margin
        if m < 1.0 and not why.startswith("degenerate"):
            m = min(1.0, 1.5 * m)
            continue
        if jittered:
            raise DegenerateInput(f"periodic triangulation failed: {why}")
        seed = sample.seed if isinstance(sample.seed, np.random.SeedSequence) else np.random.SeedSequence(sample.seed)
        rng = np.random.default_rng(seed.spawn(1)[0])
        pts = np.mod(pts + 1e-9 * rng.standard_normal(pts.shape), 1.0)
        jittered = True


def check_empty_circumspheres(tri: PeriodicTriangulation, n_pairs: int | None = None, seed=0,
                              rel_tol: float = 1e-9) -> int:
    """Count empty-sphere violations.

    With ``n_pairs`` set, that many random (tetrahedron, point) pairs are
    tested by brute force against every periodic image of the point.
    Otherwise every tetrahedron is tested against all points near it.
    """
    X = tri.coords()
    centers, r2 = circumspheres(X)
    P = tri.points
    if n_pairs is not None:
        rng = np.random.default_rng(seed)
        ti = rng.integers(0, len(X), n_pairs)
        pi = rng.integers(0, len(P), n_pairs)
        bad = 0
        for t, p in zip(ti, pi):
            images = P[p] + _SHIFTS
            bad += int(_kernels.insphere_count(centers[t:t + 1], r2[t:t + 1], images, rel_tol)[0])
        return bad
    from scipy.spatial import cKDTree

    images = (P[None, :, :] + _SHIFTS[:, None, :]).reshape(-1, 3)
    tree = cKDTree(images)
    hits = tree.query_ball_point(centers, np.sqrt(r2 * (1 - rel_tol)))
    return int(sum(len(h) for h in hits))


# ---------------------------------------------------------------------------
# Monte Carlo


@dataclass(frozen=True)
class Replicate:
    index: int
    n_points: int
    n_tets: int
    n_edges: int
    n_faces: int

    @property
    def v_bar(self) -> mpq:
        """Voronoi vertices per cell, by incidence balance (4 cells per vertex)."""
        return mpq(4 * self.n_tets, self.n_points)

    @property
    def f_bar(self) -> mpq:
        """Voronoi faces per cell, i.e. Delaunay edges per node."""
        return mpq(2 * self.n_edges, self.n_points)

    @property
    def euler_ok(self) -> bool:
        return (
            self.n_points - self.n_edges + self.n_faces - self.n_tets == 0
            and self.n_faces == 2 * self.n_tets
            and self.n_edges == self.n_points + self.n_tets
        )


def run_replicate(intensity: float, seed: np.random.SeedSequence, index: int = 0) -> Replicate:
    sample = PoissonSample.draw(intensity, seed)
    tri = periodic_delaunay(sample)
    return Replicate(index, len(sample), tri.n_tets, tri.n_edges, tri.n_faces)


def _run(args):
    return run_replicate(*args)


@dataclass(frozen=True)
class RandomStats:
    """Replicate means and standard errors of the degree statistics."""

    kind: str
    n_bar: float
    v_bar: float
    f_bar: float
    h_bar: float
    se: dict
    replicates: tuple
    seed: object

    @property
    def reps(self) -> int:
        return len(self.replicates)

    def per_replicate(self) -> list[dict]:
        rows = []
        for r in self.replicates:
            v, f = r.v_bar, r.f_bar
            if self.kind == "voronoi":
                n_, v_, f_ = mpq(4), v, f
            else:
                n_, v_, f_ = v, mpq(4), mpq(4)
            rows.append(dict(replicate=r.index, points=r.n_points, n_bar=n_, v_bar=v_, f_bar=f_,
                             h_bar=n_ * v_ / (n_ + v_)))
        return rows

    def dual(self) -> "RandomStats":
        kind = "delaunay" if self.kind == "voronoi" else "voronoi"
        return _summarize(kind, self.replicates, self.seed)


def _summarize(kind: str, reps, seed) -> RandomStats:
    tmp = RandomStats(kind, 0.0, 0.0, 0.0, 0.0, {}, tuple(reps), seed)
    rows = tmp.per_replicate()
    est, se = {}, {}
    for key in ("n_bar", "v_bar", "f_bar", "h_bar"):
        x = np.array([float(r[key]) for r in rows])
        est[key] = float(x.mean())
        se[key] = float(x.std(ddof=1) / math.sqrt(len(x))) if len(x) > 1 else float("nan")
    return RandomStats(kind, est["n_bar"], est["v_bar"], est["f_bar"], est["h_bar"], se, tuple(reps), seed)


def voronoi_delaunay_stats(N: int, reps: int, seed=None, workers: int = 1) -> RandomStats:
    """Poisson-Voronoi statistics; ``.dual()`` gives the Poisson-Delaunay ones.

    Replicate i uses the i-th child of ``SeedSequence(seed)``, so the result
    does not depend on ``workers``.
    """
    if N < 100:
        raise TooFewPoints("need an intensity of at least 100")
    if reps < 1:
        raise ValueError("reps must be positive")
    children = np.random.SeedSequence(seed).spawn(reps)
    jobs = [(N, children[i], i) for i in range(reps)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            out = list(ex.map(_run, jobs))
    else:
        out = [_run(j) for j in jobs]
    return _summarize("voronoi", out, seed)


def voronoi_face_counts(tri: PeriodicTriangulation, which) -> list[tuple[int, int]]:
    """Face counts of explicit Voronoi cells against Delaunay node degrees.

    Each cell is built by half-space intersection of bisectors with nearby
    periodic images.  Returns (face count, Delaunay degree) per point.
    """
    from scipy.spatial import HalfspaceIntersection, cKDTree

    from .geom import convex_hull

    P = tri.points
    images = (P[None, :, :] + _SHIFTS[:, None, :]).reshape(-1, 3)
    tree = cKDTree(images)
    X = tri.coords()
    _, r2 = circumspheres(X)
    reach = 2.0 * math.sqrt(float(r2.max()))
    out = []
    for i in which:
        p = P[i]
        nb = [j for j in tree.query_ball_point(p, reach) if np.any(images[j] != p)]
        Q = images[nb]
        # (q - p).x - (|q|^2 - |p|^2)/2 <= 0
        hs = np.hstack([Q - p, -0.5 * ((Q ** 2).sum(axis=1) - p @ p)[:, None]])
        hi = HalfspaceIntersection(hs, p)
        cell = convex_hull([tuple(v) for v in hi.intersections], tol=1e-9)
        out.append((len(cell.facets), int(tri.node_degree[i])))
    return out


# ---------------------------------------------------------------------------
# hyperplane arrangements


@dataclass(frozen=True)
class HyperplaneStats:
    m: int
    cells: int
    vertices: int
    incidences: int
    v_bar: mpq
    n_bar: mpq
    h_bar: mpq


def hyperplane_arrangement_stats(m: int) -> HyperplaneStats:
    """Counts for m planes in general position in R^3."""
    if m < 3:
        raise TooFewPlanes("need at least 3 planes")
    verts = math.comb(m, 3)
    cells = 1 + m + math.comb(m, 2) + math.comb(m, 3)
    inc = 8 * verts
    v = mpq(inc, cells)
    n = mpq(8)
    return HyperplaneStats(m, cells, verts, inc, v, n, n * v / (n + v))


def hyperplane_arrangement_oracle(m: int, seed=0) -> HyperplaneStats:
    """Independent count from an explicit random arrangement.

    Every cell of a simple arrangement with at least 3 planes has a vertex,
    so cells are enumerated as the sign vectors seen around the vertices.
    """
    if m < 3:
        raise TooFewPlanes("need at least 3 planes")
    rng = np.random.default_rng(seed)
    normals = rng.standard_normal((m, 3))
    offsets = rng.standard_normal(m)
    cells = set()
    pairs = set()
    vertex_cells = []
    for trip in combinations(range(m), 3):
        A = normals[list(trip)]
        x = np.linalg.solve(A, offsets[list(trip)])
        s = np.sign(normals @ x - offsets).astype(int)
        around = set()
        for eps in product((-1, 1), repeat=3):
            t = s.copy()
            t[list(trip)] = eps
            around.add(tuple(t))
        vertex_cells.append(len(around))
        for c in around:
            cells.add(c)
            pairs.add((trip, c))
    n = mpq(sum(vertex_cells), len(vertex_cells))
    v = mpq(len(pairs), len(cells))
    return HyperplaneStats(m, len(cells), len(vertex_cells), len(pairs), v, n, n * v / (n + v))
