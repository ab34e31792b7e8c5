import pytest

from mosaics.exact import mpq
from mosaics.tables import (
    check_table1_arithmetic,
    check_table2,
    dual_id,
    load_table1,
    load_table2,
    printed_matches,
)


def test_table1_shape():
    rows = load_table1()
    assert len(rows) == 62
    ids = {r.id for r in rows}
    for r in rows:
        if r.is_dual:
            assert dual_id(r.id) in ids


def test_printed_matches_semantics():
    assert printed_matches(mpq(7, 2), "7/2")
    assert not printed_matches(mpq(7, 2) + mpq(1, 10 ** 6), "7/2")
    assert printed_matches(mpq(2707, 100) + mpq(1, 1000), "27.07")
    assert not printed_matches(mpq(2707, 100) + mpq(1, 100), "27.07")


def test_table1_arithmetic_all_pass():
    bad = [c.line() for c in check_table1_arithmetic() if not c.ok]
    assert not bad, bad


def test_table1_arithmetic_detects_corruption():
    rows = load_table1()
    r = rows[0]
    broken = [type(r)(**{**r.__dict__, "h_bar": "5"})] + rows[1:]
    checks = check_table1_arithmetic(broken)
    assert not checks[0].ok


def test_table2_rows():
    rows = load_table2()
    assert len(rows) == 11
    checks = check_table2(rows)
    assert all(c.ok for c in checks), [c.line() for c in checks if not c.ok]
    spaces = {r.space for r in rows}
    assert spaces == {"Euclidean", "Elliptic", "Hyperbolic"}


@pytest.mark.parametrize("rid", ["1", "6", "3"])
def test_table2_reciprocal_column(rid):
    row = next(r for r in load_table2() if str(r.id) == rid)
    check = next(c for c in check_table2([row]))
    assert check.ok
