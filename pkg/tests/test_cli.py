import csv
import io
import json

import pytest

from mosaics import cli, tables
from mosaics.exact import rational
from mosaics.spherical import polyhedron, write_off


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_stats_cubic(capsys):
    code, out, _ = run(capsys, "stats", "cubic")
    assert code == 0 and out.split("\n")[0] == "8 8 6 4"


def test_stats_exact_alternated(capsys):
    code, out, _ = run(capsys, "stats", "alternated_cubic", "--exact")
    assert out.split() == ["14", "14/3", "16/3", "7/2"]


def test_construct_roundtrip(tmp_path, capsys):
    path = tmp_path / "brick.json"
    code, out, _ = run(capsys, "construct", "brick_wall_3d", "--out", str(path))
    assert code == 0 and "face_to_face=false" in out
    obj = json.loads(path.read_text())
    assert obj["face_to_face"] is False and obj["dimension"] == 3
    code, out, _ = run(capsys, "stats", str(path))
    assert out.split("\n")[0] == "2 8 6 1.6"


def test_construct_cubic_has_one_cell(capsys):
    code, out, err = run(capsys, "construct", "cubic")
    assert code == 0
    assert len(json.loads(out)["cells"]) == 1
    assert "cells/period=1" in err


def test_construct_full_validation(capsys):
    code, _, err = run(capsys, "construct", "alternated_cubic", "--full")
    assert code == 0 and "face_to_face=true" in err


def test_nij_check(capsys):
    code, out, _ = run(capsys, "nij", "bitruncated_cubic", "--check")
    assert code == 0 and "PASS" in out


def test_nij_not_face_to_face(capsys):
    code, _, err = run(capsys, "nij", "brick_wall_3d")
    assert code == 2 and "face-to-face" in err


def test_verify_table1_both_modes(capsys):
    code, out, _ = run(capsys, "verify", "table1", "--arithmetic")
    assert code == 0 and "62/62 rows pass" in out
    code, out, _ = run(capsys, "verify", "table1")
    assert code == 0 and "FAIL" not in out


def test_verify_table2(capsys):
    code, out, _ = run(capsys, "verify", "table2")
    assert code == 0 and "11/11 rows pass" in out
    assert "{4,3,4} read as {3,4,3}" in out


def test_verify_failure_exit_code(capsys, monkeypatch):
    bad = tables.RowCheck("1", "x", False, "broken")
    monkeypatch.setattr(tables, "check_table2", lambda: [bad])
    code, out, _ = run(capsys, "verify", "table2")
    assert code == 1 and "failing rows: 1" in out


def test_verify_conjecture(capsys):
    code, out, _ = run(capsys, "verify", "conjecture")
    assert code == 0 and f"{len(cli.CATALOG_3D)}/{len(cli.CATALOG_3D)}" in out


def test_verify_angles(capsys):
    code, out, _ = run(capsys, "verify", "angles", "bitruncated_cubic")
    assert code == 0 and out.strip().endswith("PASS")
    code, out, _ = run(capsys, "verify", "angles", "alternated_cubic", "--tol", "0")
    assert code == 1


def test_plane_csv_and_svg(tmp_path, capsys):
    c, s = tmp_path / "p.csv", tmp_path / "p.svg"
    code, out, _ = run(capsys, "plane", "--set", "all", "--csv", str(c), "--svg", str(s))
    assert code == 0
    rows = list(csv.DictReader(c.open()))
    assert list(rows[0]) == cli.CSV_FIELDS
    assert len(rows) == 62 + len(cli.CATALOG_3D)
    for r in rows:
        n, v = rational(r["n_bar_exact"]), rational(r["v_bar_exact"])
        assert float(r["h_bar"]) == pytest.approx(float(n * v / (n + v)), abs=1e-6)
    first = s.read_text()
    assert first.startswith("<svg") and 'id="h3"' in first and 'id="h4"' in first
    run(capsys, "plane", "--set", "all", "--csv", str(c), "--svg", str(s))
    assert s.read_text() == first


def test_plane_fv_axes(tmp_path, capsys):
    c, s = tmp_path / "p.csv", tmp_path / "p.svg"
    code, _, _ = run(capsys, "plane", "--set", "catalog", "--csv", str(c), "--svg", str(s), "--axes", "fv")
    assert code == 0 and 'id="simplicial"' in s.read_text()


def test_empty_csv_has_header():
    buf = io.StringIO()
    cli.write_csv([], buf)
    assert buf.getvalue().strip() == ",".join(cli.CSV_FIELDS)


def test_iterate(capsys):
    code, out, _ = run(capsys, "iterate", "foam", "bitruncated_cubic", "-k", "2")
    assert code == 0
    assert "1 96/7 96/7" in out and "2 384/31 384/31" in out
    code, out, _ = run(capsys, "iterate", "dualfoam", "barycentric:cubic", "-k", "1")
    assert code == 0 and "1 96/7 96/7" in out


def test_mix(capsys):
    code, out, _ = run(capsys, "mix", "--lambda", "1")
    assert code == 0 and "h_bar=4" in out
    code, out, _ = run(capsys, "mix", "--lambda", "0")
    assert "h_bar=24/7" in out
    code, _, _ = run(capsys, "mix", "--lambda", "3/2")
    assert code == 2


def test_random_seed_env(tmp_path, capsys, monkeypatch):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    monkeypatch.setenv("MOSAIC_SEED", "77")
    code, out, _ = run(capsys, "random", "voronoi", "--points", "200", "--reps", "2", "--seed", "1", "--csv", str(a))
    assert code == 0 and "seed=77" in out
    run(capsys, "random", "voronoi", "--points", "200", "--reps", "2", "--seed", "2", "--csv", str(b))
    assert a.read_text() == b.read_text()
    rows = list(csv.DictReader(a.open()))
    assert rows[-1]["replicate"] == "mean" and all(r["euler_ok"] == "True" for r in rows)
    for r in rows[:-1]:
        assert float(r["f_bar"]) - float(r["v_bar"]) / 2 == pytest.approx(2, abs=1e-5)


def test_random_delaunay(capsys, monkeypatch):
    monkeypatch.delenv("MOSAIC_SEED", raising=False)
    code, out, _ = run(capsys, "random", "delaunay", "--points", "200")
    assert code == 0
    row = list(csv.DictReader(io.StringIO(out.split("#")[0])))[0]
    assert float(row["v_bar"]) == 4


def test_sphere_catalog_and_off(tmp_path, capsys):
    code, out, _ = run(capsys, "sphere", "cube")
    assert code == 0 and "h_bar = 12/7 = 2 - 2/7" in out
    f = tmp_path / "ico.off"
    f.write_text(write_off(polyhedron("icosahedron")))
    code, out, _ = run(capsys, "sphere", str(f))
    assert code == 0 and "N_c=20 N_v=12 N_e=30" in out


def test_usage_errors(capsys):
    assert run(capsys, "stats", "no_such_mosaic")[0] == 2
    assert run(capsys, "sphere", "no_such_solid")[0] == 2
    assert run(capsys, "random", "voronoi", "--points", "10")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "--help")[0] == 0
