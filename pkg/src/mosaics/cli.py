"""Command-line interface: ``mosaics <command> ...``.

Exit codes: 0 success, 1 a verification failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys

from .errors import MosaicError
from .exact import rational

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

#: Constructed mosaics shown by ``plane --set catalog`` and checked by ``verify conjecture``.
CATALOG_3D = [
    "cubic",
    "alternated_cubic",
    "bitruncated_cubic",
    "hyperplane_generic",
    "prism:triangular",
    "prism:square",
    "prism:hexagonal",
    "prism:trihexagonal",
    "prism:snub_square",
    "prism:elongated_triangular",
    "prism:truncated_square",
    "prism:truncated_hexagonal",
    "prism:rhombitrihexagonal",
    "prism:truncated_trihexagonal",
    "prism:snub_hexagonal",
    "barycentric:cubic",
    "foam:1:bitruncated_cubic",
    "foam:2:bitruncated_cubic",
    "dualfoam:1:barycentric:cubic",
]

CSV_FIELDS = ["id", "name", "n_bar", "v_bar", "f_bar", "h_bar", "n_bar_exact", "v_bar_exact", "source"]


def _out(text: str = "") -> None:
    sys.stdout.write(text + "\n")


def _q(x) -> str:
    """Exact rendering: integers plain, otherwise p/q."""
    x = rational(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _short(x) -> str:
    x = rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{float(x):.4f}".rstrip("0")


def _load_mosaic(arg: str):
    from .constructions import build
    from .periodic import from_json

    if os.path.isfile(arg):
        with open(arg) as fh:
            return from_json(fh.read())
    return build(arg)


# ---------------------------------------------------------------------------
# commands


def cmd_construct(a) -> int:
    from .periodic import stats, to_json

    M = _load_mosaic(a.name)
    if a.full:
        M.validate(full=True)
    text = to_json(M)
    st = stats(M)
    summary = (
        f"{a.name}: d={M.dimension} cells/period={st.N_c} nodes/period={st.N_v} "
        f"face_to_face={'true' if M.face_to_face else 'false'}"
    )
    if a.out:
        with open(a.out, "w") as fh:
            fh.write(text)
        _out(summary)
        _out(f"wrote {a.out}")
    else:
        sys.stderr.write(summary + "\n")
        sys.stdout.write(text)
    return EXIT_OK


def cmd_stats(a) -> int:
    from .periodic import stats

    M = _load_mosaic(a.name)
    st = stats(M)
    fmt = _q if a.exact else _short
    _out(" ".join(fmt(x) for x in st.row()))
    if a.verbose:
        _out(f"# n_bar v_bar f_bar h_bar; cells={st.N_c} nodes={st.N_v} face_to_face={M.face_to_face}")
        _out(f"# node degrees {st.node_degrees}; cell degrees {st.cell_degrees}")
    return EXIT_OK


def _matrix_lines(rows) -> list[str]:
    cells = [[_q(x) for x in r] for r in rows]
    w = max(len(c) for r in cells for c in r)
    return ["  ".join(c.rjust(w) for c in r) for r in cells]


def cmd_nij(a) -> int:
    from .periodic import measure_nij, nij_from_params, stats

    M = _load_mosaic(a.name)
    st = stats(M)
    measured = measure_nij(M)
    formula = nij_from_params(st.v_bar, st.f_bar, st.n_bar)
    _out("measured:")
    for line in _matrix_lines(measured.rows()):
        _out("  " + line)
    if a.check:
        _out("formula:")
        for line in _matrix_lines(formula.rows()):
            _out("  " + line)
        diff = measured.diff(formula)
        _out("diff:")
        for line in _matrix_lines(diff):
            _out("  " + line)
        ok = all(x == 0 for r in diff for x in r)
        _out("PASS" if ok else "FAIL")
        return EXIT_OK if ok else EXIT_FAIL
    return EXIT_OK


def _report(checks, label: str) -> int:
    for c in checks:
        _out(c.line())
    n_ok = sum(c.ok for c in checks)
    _out(f"{label}: {n_ok}/{len(checks)} rows pass")
    failed = [c.id for c in checks if not c.ok]
    if failed:
        _out("failing rows: " + ", ".join(failed))
        return EXIT_FAIL
    return EXIT_OK


def _verify_table1(a) -> int:
    from .tables import check_table1_arithmetic, check_table1_geometric

    if a.arithmetic:
        return _report(check_table1_arithmetic(), "table1 arithmetic")
    return _report(check_table1_geometric(), "table1 geometric")


def _verify_table2(a) -> int:
    from .tables import check_table2

    _out("# printed harmonic column read as 1/h; printed degree columns read as (v, n)")
    return _report(check_table2(), "table2")


def _verify_conjecture(a) -> int:
    from .constructions import build
    from .formulas import REFINED_3D_H_FLOOR, conjecture_predicate, refined_3d_bound
    from .periodic import stats
    from .tables import RowCheck

    checks = []
    for name in CATALOG_3D:
        M = build(name)
        st = stats(M)
        in_range = conjecture_predicate(st, 3)
        bound_ok = st.h_bar >= REFINED_3D_H_FLOOR and st.n_bar >= refined_3d_bound(st.v_bar)
        detail = f"h={_q(st.h_bar)} in (3, 4]: {in_range}; n >= max(4, 2v/(2v-7)): {bound_ok}"
        checks.append(RowCheck(name, "", in_range and bound_ok and M.face_to_face, detail))
    _out("# face-to-face 3D mosaics; the interval (d, 2^(d-1)] is empty for d <= 2")
    return _report(checks, "conjecture")


def _verify_angles(a) -> int:
    from .periodic import angle_tiling_sums, average_total_angle, stats

    M = _load_mosaic(a.name)
    d = M.dimension
    S = 2 * math.pi if d == 2 else 4 * math.pi
    st = stats(M)
    _, _, omega = average_total_angle(M)
    rel = abs(float(st.h_bar) * omega / S - 1)
    nodes, cells = angle_tiling_sums(M)
    node_err = max(abs(x - S) for x in nodes)
    cell_err = max(abs(x - S) for x in cells)
    ok = rel <= a.tol and node_err <= max(a.tol, 1e-9) and cell_err <= max(a.tol, 1e-9)
    _out(f"h*Omega/S - 1 = {rel:.3e}; max node tiling error {node_err:.3e}; max cell tiling error {cell_err:.3e}")
    _out("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(a) -> int:
    return {
        "table1": _verify_table1,
        "table2": _verify_table2,
        "conjecture": _verify_conjecture,
        "angles": _verify_angles,
    }[a.what](a)


# ---------------------------------------------------------------------------
# symbolic plane


def plane_rows(which: str) -> list[dict]:
    """Rows of the symbolic plane as dictionaries in the CSV schema."""
    from .constructions import build
    from .periodic import stats
    from .tables import load_table1

    rows = []

    def add(rid, name, n, v, f, source):
        n, v = rational(n), rational(v)
        h = n * v / (n + v)
        rows.append(
            {
                "id": rid,
                "name": name,
                "n_bar": f"{float(n):.6f}",
                "v_bar": f"{float(v):.6f}",
                "f_bar": f"{float(f):.6f}",
                "h_bar": f"{float(h):.6f}",
                "n_bar_exact": _q(n),
                "v_bar_exact": _q(v),
                "source": source,
            }
        )

    if which in ("table1", "all"):
        for r in load_table1():
            src = "constructed" if r.construct else "monte-carlo" if r.random else "arithmetic"
            add(r.id, r.name, r.n, r.v, r.f, src)
    if which in ("catalog", "all"):
        for k, name in enumerate(CATALOG_3D, 1):
            st = stats(build(name))
            add(f"c{k}", name, st.n_bar, st.v_bar, st.f_bar, "constructed")
    return rows


def write_csv(rows: list[dict], fh) -> None:
    w = csv.DictWriter(fh, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)


def render_svg(rows: list[dict], axes: str = "nv") -> str:
    """Deterministic scatter plot (800x600) with the h = 3 and h = 4 curves."""
    W, H = 800, 600
    left, right, top, bottom = 70, 30, 30, 60
    if axes == "nv":
        xr, yr = (0.0, 30.0), (0.0, 30.0)
        xlabel, ylabel = "n_bar", "v_bar"
    else:
        xr, yr = (0.0, 20.0), (0.0, 30.0)
        xlabel, ylabel = "f_bar", "v_bar"

    def X(x):
        return left + (x - xr[0]) / (xr[1] - xr[0]) * (W - left - right)

    def Y(y):
        return H - bottom - (y - yr[0]) / (yr[1] - yr[0]) * (H - top - bottom)

    def path(pts):
        pts = [(x, y) for x, y in pts if xr[0] <= x <= xr[1] and yr[0] <= y <= yr[1]]
        return "M " + " L ".join(f"{X(x):.2f} {Y(y):.2f}" for x, y in pts) if len(pts) > 1 else ""

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        f'<rect x="0" y="0" width="{W}" height="{H}" fill="white"/>',
        f'<line x1="{X(xr[0]):.2f}" y1="{Y(yr[0]):.2f}" x2="{X(xr[1]):.2f}" y2="{Y(yr[0]):.2f}" stroke="black"/>',
        f'<line x1="{X(xr[0]):.2f}" y1="{Y(yr[0]):.2f}" x2="{X(xr[0]):.2f}" y2="{Y(yr[1]):.2f}" stroke="black"/>',
    ]
    for t in range(int(xr[0]), int(xr[1]) + 1, 5):
        out.append(f'<text x="{X(t):.2f}" y="{Y(yr[0]) + 18:.2f}" font-size="12" text-anchor="middle">{t}</text>')
    for t in range(int(yr[0]), int(yr[1]) + 1, 5):
        out.append(f'<text x="{X(xr[0]) - 8:.2f}" y="{Y(t) + 4:.2f}" font-size="12" text-anchor="end">{t}</text>')
    out.append(f'<text x="{W / 2:.0f}" y="{H - 15}" font-size="14" text-anchor="middle">{xlabel}</text>')
    out.append(f'<text x="18" y="{H / 2:.0f}" font-size="14" text-anchor="middle" '
               f'transform="rotate(-90 18 {H / 2:.0f})">{ylabel}</text>')
    if axes == "nv":
        for h in (3, 4):
            xs = [h + 0.05 * i for i in range(1, 600)]
            d = path([(x, h * x / (x - h)) for x in xs])
            out.append(f'<path id="h{h}" d="{d}" fill="none" stroke="gray" stroke-dasharray="4 4"/>')
    else:
        # simple polyhedra f = v/2 + 2, simplicial polyhedra f = 2v - 4
        d1 = path([(v / 2 + 2, v) for v in (yr[0], yr[1])])
        d2 = path([(2 * v - 4, v) for v in (2.0, 12.0)])
        out.append(f'<path id="simple" d="{d1}" fill="none" stroke="gray"/>')
        out.append(f'<path id="simplicial" d="{d2}" fill="none" stroke="gray"/>')
    for r in rows:
        x = float(r["n_bar"] if axes == "nv" else r["f_bar"])
        y = float(r["v_bar"])
        if xr[0] <= x <= xr[1] and yr[0] <= y <= yr[1]:
            out.append(f'<circle cx="{X(x):.2f}" cy="{Y(y):.2f}" r="3" fill="black"><title>{r["id"]}</title></circle>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cmd_plane(a) -> int:
    rows = plane_rows(a.set)
    with open(a.csv, "w", newline="") as fh:
        write_csv(rows, fh)
    _out(f"wrote {len(rows)} rows to {a.csv}")
    if a.svg:
        with open(a.svg, "w") as fh:
            fh.write(render_svg(rows, a.axes))
        _out(f"wrote {a.svg}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def cmd_iterate(a) -> int:
    from .constructions import build, dual_foam_step, foam_step
    from .formulas import foam_recursion
    from .periodic import stats

    M = build(a.name)
    st = stats(M)
    key = "v_bar" if a.kind == "foam" else "n_bar"
    x0 = getattr(st, key)
    step = foam_step if a.kind == "foam" else dual_foam_step
    _out(f"step {key} predicted measured h_bar")
    _out(f"0 {_q(x0)} {_q(x0)} {_q(st.h_bar)}")
    ok = True
    for k in range(1, a.k + 1):
        M = step(M)
        st = stats(M)
        pred = foam_recursion(x0, 3, k)
        meas = getattr(st, key)
        ok &= pred == meas
        _out(f"{k} {_q(pred)} {_q(meas)} {_q(st.h_bar)}")
    _out("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_mix(a) -> int:
    from .constructions import LayerRecipe, layered_mix

    st = layered_mix(LayerRecipe(lam=rational(a.lam)))
    _out(f"lambda={_q(rational(a.lam))} n_bar={_q(st.n_bar)} v_bar={_q(st.v_bar)} h_bar={_q(st.h_bar)}")
    return EXIT_OK


def cmd_random(a) -> int:
    from .random_mosaics import voronoi_delaunay_stats

    seed = int(os.environ["MOSAIC_SEED"]) if os.environ.get("MOSAIC_SEED") else a.seed
    st = voronoi_delaunay_stats(a.points, a.reps, seed, workers=a.workers)
    if a.kind == "delaunay":
        st = st.dual()
    buf = io.StringIO() if not a.csv else open(a.csv, "w", newline="")
    fields = ["replicate", "points", "n_bar", "v_bar", "f_bar", "h_bar", "euler_ok"]
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for rep, row in zip(st.replicates, st.per_replicate()):
        w.writerow({**{k: (f"{float(v):.6f}" if k.endswith("bar") else v) for k, v in row.items()},
                    "euler_ok": rep.euler_ok})
    w.writerow({"replicate": "mean", "points": a.points, "n_bar": f"{st.n_bar:.6f}", "v_bar": f"{st.v_bar:.6f}",
                "f_bar": f"{st.f_bar:.6f}", "h_bar": f"{st.h_bar:.6f}",
                "euler_ok": all(r.euler_ok for r in st.replicates)})
    if a.csv:
        buf.close()
        _out(f"wrote {a.csv}")
    else:
        sys.stdout.write(buf.getvalue())
    _out(f"# {a.kind}: n_bar={st.n_bar:.4f} v_bar={st.v_bar:.4f}+-{st.se['v_bar']:.4f} "
         f"f_bar={st.f_bar:.4f} h_bar={st.h_bar:.4f} seed={seed}")
    return EXIT_OK if all(r.euler_ok for r in st.replicates) else EXIT_FAIL


def cmd_sphere(a) -> int:
    from .spherical import from_polyhedron, polyhedron, read_off, spherical_stats

    if os.path.isfile(a.name):
        with open(a.name) as fh:
            P = read_off(fh.read())
    else:
        P = polyhedron(a.name)
    S = from_polyhedron(P, a.name)
    st = spherical_stats(S)
    ok = st.h_bar == 2 - st.mu_bar and abs(sum(st.areas) - 4 * math.pi) < 1e-9
    _out(f"N_c={S.N_c} N_v={S.N_v} N_e={S.N_e}")
    _out(f"n_bar={_q(st.n_bar)} v_bar={_q(st.v_bar)} mu_bar={_q(st.mu_bar)}")
    _out(f"h_bar = {_q(st.h_bar)} = 2 - {_q(st.mu_bar)}" if ok else f"h_bar = {_q(st.h_bar)} != 2 - mu_bar")
    _out(f"Omega_bar={st.omega_bar:.12f} 2pi/Omega_bar={2 * math.pi / st.omega_bar:.12f} "
         f"area sum - 4pi = {sum(st.areas) - 4 * math.pi:.2e}")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mosaics", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("construct", help="build a mosaic and write it as JSON")
    s.add_argument("name")
    s.add_argument("--out")
    s.add_argument("--full", action="store_true", help="run the full pairwise validity check")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("stats", help="print n_bar v_bar f_bar h_bar")
    s.add_argument("name")
    s.add_argument("--exact", action="store_true")
    s.add_argument("-v", "--verbose", action="store_true")
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("nij", help="incidence matrix, measured and from the closed form")
    s.add_argument("name")
    s.add_argument("--check", action="store_true")
    s.set_defaults(func=cmd_nij)

    s = sub.add_parser("verify", help="run a verification")
    vs = s.add_subparsers(dest="what", required=True)
    t = vs.add_parser("table1")
    t.add_argument("--arithmetic", action="store_true")
    vs.add_parser("table2")
    vs.add_parser("conjecture")
    t = vs.add_parser("angles")
    t.add_argument("name")
    t.add_argument("--tol", type=float, default=1e-9)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("plane", help="export the symbolic plane")
    s.add_argument("--set", choices=["table1", "catalog", "all"], default="table1")
    s.add_argument("--csv", required=True)
    s.add_argument("--svg")
    s.add_argument("--axes", choices=["nv", "fv"], default="nv")
    s.set_defaults(func=cmd_plane)

    s = sub.add_parser("iterate", help="foam or dual-foam iterates against the recursion")
    s.add_argument("kind", choices=["foam", "dualfoam"])
    s.add_argument("name")
    s.add_argument("-k", type=int, default=1)
    s.set_defaults(func=cmd_iterate)

    s = sub.add_parser("mix", help="limiting stats of the layered construction")
    s.add_argument("--lambda", dest="lam", required=True, help="fraction of cubic layers, e.g. 1/2")
    s.set_defaults(func=cmd_mix)

    s = sub.add_parser("random", help="Poisson-Voronoi / Poisson-Delaunay Monte Carlo")
    s.add_argument("kind", choices=["voronoi", "delaunay"])
    s.add_argument("--points", type=int, default=1000)
    s.add_argument("--reps", type=int, default=1)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--csv")
    s.set_defaults(func=cmd_random)

    s = sub.add_parser("sphere", help="spherical mosaic of a catalog polyhedron or OFF file")
    s.add_argument("name")
    s.set_defaults(func=cmd_sphere)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return a.func(a)
    except (MosaicError, ValueError, ZeroDivisionError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
