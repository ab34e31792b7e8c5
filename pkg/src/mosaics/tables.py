"""Reference tables shipped with the package and their verifiers."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources

from .exact import mpq, rational
from .formulas import regular_honeycomb_stats
from .periodic import harmonic

__all__ = [
    "Table1Row",
    "Table2Row",
    "RowCheck",
    "load_table1",
    "load_table2",
    "printed_matches",
    "check_table1_arithmetic",
    "check_table1_geometric",
    "check_table2",
    "dual_id",
]

PRINTED_TOL = mpq(5, 1000)
TABLE2_TOL = mpq(5, 10000)


@dataclass(frozen=True)
class Table1Row:
    id: str
    name: str
    n_bar: str
    v_bar: str
    f_bar: str
    h_bar: str
    construct: str
    random: str

    @property
    def n(self) -> mpq:
        return rational(self.n_bar)

    @property
    def v(self) -> mpq:
        return rational(self.v_bar)

    @property
    def f(self) -> mpq:
        return rational(self.f_bar)

    @property
    def h(self) -> mpq:
        return rational(self.h_bar)

    @property
    def is_dual(self) -> bool:
        return self.id.endswith("'")


@dataclass(frozen=True)
class Table2Row:
    id: int
    cell: str
    node: str
    space: str
    n_printed: int
    v_printed: int
    h_printed: str
    schlafli_printed: str
    pqr: tuple


@dataclass(frozen=True)
class RowCheck:
    id: str
    name: str
    ok: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.id:>4} {self.name}: {self.detail}"


def _rows(fname: str) -> list[dict]:
    with resources.files("mosaics").joinpath("data", fname).open(newline="") as fh:
        return list(csv.DictReader(fh))


def load_table1() -> list[Table1Row]:
    return [Table1Row(**r) for r in _rows("table1.csv")]


def load_table2() -> list[Table2Row]:
    out = []
    for r in _rows("table2.csv"):
        out.append(
            Table2Row(
                int(r["id"]), r["cell"], r["node"], r["space"], int(r["n_bar_printed"]),
                int(r["v_bar_printed"]), r["h_printed"], r["schlafli_printed"],
                (int(r["p"]), int(r["q"]), int(r["r"])),
            )
        )
    return out


def printed_matches(value, printed: str, tol=PRINTED_TOL) -> bool:
    """Exact match for printed integers and fractions, rounding tolerance for decimals."""
    p = rational(printed)
    if "." in printed:
        return abs(rational(value) - p) <= tol
    return rational(value) == p


def dual_id(rid: str) -> str:
    return rid[:-1] if rid.endswith("'") else rid + "'"


def _fmt(x) -> str:
    return str(x) if x.denominator == 1 else f"{x} ({float(x):.4f})"


def check_table1_arithmetic(rows: list[Table1Row] | None = None) -> list[RowCheck]:
    """Recompute h from (n, v) for every row and check each primal/dual pair.

    For a dual pair, n and v swap and the dual f equals (f - 2) n / v + 2.
    Decimal entries are compared with the printed rounding tolerance.
    """
    rows = rows or load_table1()
    by_id = {r.id: r for r in rows}
    out = []
    for r in rows:
        h = harmonic(r.n, r.v)
        problems = []
        if not printed_matches(h, r.h_bar):
            problems.append(f"h = {float(h):.5f} vs printed {r.h_bar}")
        if r.is_dual:
            p = by_id.get(dual_id(r.id))
            if p is None:
                problems.append("primal row missing")
            else:
                f_dual = (p.f - 2) * p.n / p.v + 2
                if not printed_matches(p.v, r.n_bar) or not printed_matches(p.n, r.v_bar):
                    problems.append("n and v are not swapped from the primal row")
                approx = any("." in s for s in (p.n_bar, p.v_bar, p.f_bar))
                f_ok = abs(f_dual - r.f) <= PRINTED_TOL if approx else printed_matches(f_dual, r.f_bar)
                if not f_ok:
                    problems.append(f"dual f = {float(f_dual):.4f} vs printed {r.f_bar}")
        detail = "; ".join(problems) if problems else f"h = {float(h):.4f} (printed {r.h_bar})"
        out.append(RowCheck(r.id, r.name, not problems, detail))
    return out


def check_table1_geometric(rows: list[Table1Row] | None = None) -> list[RowCheck]:
    """Build every constructible row and compare its exact stats with the printed ones."""
    from .constructions import build
    from .periodic import stats

    rows = rows or load_table1()
    out = []
    for r in rows:
        if not r.construct:
            continue
        st = stats(build(r.construct))
        problems = []
        for label, val, printed in (("n", st.n_bar, r.n_bar), ("v", st.v_bar, r.v_bar), ("f", st.f_bar, r.f_bar),
                                    ("h", st.h_bar, r.h_bar)):
            if not printed_matches(val, printed):
                problems.append(f"{label} = {val} vs printed {printed}")
        detail = "; ".join(problems) if problems else (
            f"{r.construct}: n={_fmt(st.n_bar)} v={_fmt(st.v_bar)} f={_fmt(st.f_bar)} h={_fmt(st.h_bar)}"
        )
        out.append(RowCheck(r.id, r.name, not problems, detail))
    return out


_SPACE = {"Euclidean": "euclidean", "Hyperbolic": "hyperbolic", "Elliptic": "elliptic"}


def check_table2(rows: list[Table2Row] | None = None) -> list[RowCheck]:
    """Check every regular honeycomb row.

    The printed degree columns are read as (v, n): the first is the vertex
    count of the cell.  The printed harmonic column is read as 1/h.
    """
    rows = rows or load_table2()
    out = []
    for r in rows:
        p, q, rr = r.pqr
        hs = regular_honeycomb_stats(p, q, rr)
        problems = []
        if (hs.v_bar, hs.n_bar) != (r.n_printed, r.v_printed):
            problems.append(f"(v, n) = ({hs.v_bar}, {hs.n_bar}) vs printed columns ({r.n_printed}, {r.v_printed})")
        if hs.curvature.label != _SPACE[r.space]:
            problems.append(f"curvature {hs.curvature.label} vs printed {r.space}")
        inv = 1 / hs.h_bar
        if abs(inv - rational(r.h_printed)) > TABLE2_TOL:
            problems.append(f"1/h = {float(inv):.4f} vs printed {r.h_printed}")
        # h against the flat value 4 must agree with the curvature test
        side = (hs.h_bar > 4) - (hs.h_bar < 4)
        expect = {"hyperbolic": 1, "euclidean": 0, "elliptic": -1}[hs.curvature.label]
        if side != expect:
            problems.append("h vs 4 disagrees with the curvature test")
        notes = []
        printed_sym = "{" + ",".join(map(str, r.pqr)) + "}"
        if printed_sym != r.schlafli_printed:
            notes.append(f"printed symbol {r.schlafli_printed} read as {printed_sym}")
        detail = "; ".join(problems) if problems else (
            f"{printed_sym} n={hs.n_bar} v={hs.v_bar} h={hs.h_bar} 1/h={float(inv):.3f} {hs.curvature.label}"
        )
        if notes:
            detail += " [" + "; ".join(notes) + "]"
        out.append(RowCheck(str(r.id), f"{r.cell}/{r.node}", not problems, detail))
    return out
