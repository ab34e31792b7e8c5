import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mosaics.constructions import build
from mosaics.errors import BelowSimplexDegree, DegenerateDenominator, NonPositive, NotAHoneycomb
from mosaics.exact import mpq
from mosaics.formulas import (
    PLATONIC,
    REFINED_3D_H_FLOOR,
    CurvatureClass,
    barycentric_degrees,
    conjecture_predicate,
    foam_recursion,
    h_lower_bound,
    harmonic_degree,
    hyperplane_h,
    planar_nff_relation,
    platonic_counts,
    refined_3d_bound,
    refined_3d_h_bound,
    regular_honeycomb_stats,
    schlafli_classify,
    spherical_nff_relation,
)
from mosaics.periodic import stats

pos = st.fractions(min_value=mpq(1, 100), max_value=100, max_denominator=200).map(lambda f: mpq(f.numerator, f.denominator))


def test_harmonic_examples():
    assert harmonic_degree(8, 8) == 4
    assert harmonic_degree(6, 3) == 2
    with pytest.raises(NonPositive):
        harmonic_degree(0, 4)


@given(pos, pos)
def test_harmonic_symmetric(a, b):
    assert harmonic_degree(a, b) == harmonic_degree(b, a)


@given(pos, pos, pos)
def test_harmonic_monotone(a, b, c):
    assert harmonic_degree(a + c, b) > harmonic_degree(a, b)


@given(pos)
def test_harmonic_diagonal(x):
    assert harmonic_degree(x, x) == x / 2


def test_hyperplane_h():
    assert [hyperplane_h(d) for d in (1, 2, 3, 4)] == [1, 2, 4, 8]


def test_foam_recursion_examples():
    assert foam_recursion(24, 3, 1) == mpq(96, 7)
    assert foam_recursion(24, 3, 3) == mpq(1536, 127)
    assert foam_recursion(12, 3, 5) == 12
    assert foam_recursion(24, 3, math.inf) == 12
    with pytest.raises(BelowSimplexDegree):
        foam_recursion(3, 3, 1)


@given(st.integers(1, 6), st.fractions(min_value=0, max_value=200, max_denominator=50))
def test_foam_recursion_contracts(d, extra):
    x = mpq(d + 1) + mpq(extra.numerator, extra.denominator)
    fixed = d * (d + 1)
    y = foam_recursion(x, d, 1)
    assert abs(y - fixed) <= abs(x - fixed) / 2


@pytest.mark.parametrize("d", range(1, 9))
def test_barycentric_bounds(d):
    n, v, h = barycentric_degrees(d)
    assert n == math.factorial(d + 1) and v == d + 1
    assert d <= h < d + 1


def test_barycentric_examples():
    assert barycentric_degrees(3) == (24, 4, mpq(24, 7))
    assert barycentric_degrees(2) == (6, 3, 2)
    assert barycentric_degrees(4)[2] == mpq(24, 5)


def test_lower_bounds():
    assert h_lower_bound(3) == 2
    assert refined_3d_bound(mpq(14, 3)) == 4
    assert refined_3d_bound(4) == 8
    assert refined_3d_h_bound(4) == mpq(8, 3)
    assert refined_3d_h_bound(mpq(14, 3)) == REFINED_3D_H_FLOOR == mpq(28, 13)
    with pytest.raises(BelowSimplexDegree):
        refined_3d_bound(mpq(7, 2))


@given(st.fractions(min_value=4, max_value=60, max_denominator=60))
def test_refined_floor_is_minimum(v):
    assert refined_3d_h_bound(mpq(v.numerator, v.denominator)) >= REFINED_3D_H_FLOOR


@pytest.mark.parametrize("name", ["cubic", "alternated_cubic", "bitruncated_cubic", "barycentric:cubic",
                                  "prism:triangular", "foam:1:bitruncated_cubic"])
def test_constructed_mosaics_respect_bounds(name):
    s = stats(build(name))
    assert s.n_bar >= refined_3d_bound(s.v_bar)
    assert s.h_bar >= REFINED_3D_H_FLOOR >= h_lower_bound(3)


def test_schlafli_examples():
    assert schlafli_classify(4, 4) is CurvatureClass.EUCLIDEAN
    assert schlafli_classify(5, 3) is CurvatureClass.SPHERICAL
    assert schlafli_classify(7, 3) is CurvatureClass.HYPERBOLIC


@given(st.integers(3, 40), st.integers(3, 40))
def test_schlafli_symmetric_and_matches_h(p, q):
    c = schlafli_classify(p, q)
    assert c is schlafli_classify(q, p)
    h = mpq(p * q, p + q)
    expect = {-1: CurvatureClass.SPHERICAL, 0: CurvatureClass.EUCLIDEAN, 1: CurvatureClass.HYPERBOLIC}
    assert c is expect[(h > 2) - (h < 2)]


def test_platonic_table():
    for p, q in PLATONIC:
        V, E, F = platonic_counts(p, q)
        assert V - E + F == 2
        assert platonic_counts(q, p) == (F, E, V)
    with pytest.raises(NotAHoneycomb):
        platonic_counts(4, 4)


def test_regular_honeycombs():
    s = regular_honeycomb_stats(4, 3, 4)
    assert (s.n_bar, s.v_bar, s.h_bar, s.curvature.label) == (8, 8, 4, "euclidean")
    s = regular_honeycomb_stats(3, 3, 3)
    assert (s.n_bar, s.v_bar, s.h_bar, s.curvature.label) == (4, 4, 2, "elliptic")
    s = regular_honeycomb_stats(5, 3, 5)
    assert (s.n_bar, s.v_bar, s.h_bar, s.curvature.label) == (20, 20, 10, "hyperbolic")
    with pytest.raises(NotAHoneycomb):
        regular_honeycomb_stats(4, 4, 3)


def test_planar_nff_examples():
    assert planar_nff_relation(4, 1) == (4, 4)
    assert planar_nff_relation(4, 0) == (mpq(8, 3), 2)
    assert planar_nff_relation(3, 1) == (6, 6)
    with pytest.raises(DegenerateDenominator):
        planar_nff_relation(2, 1)


@pytest.mark.parametrize("v", range(3, 13))
def test_planar_nff_agree_when_all_regular(v):
    a, b = planar_nff_relation(v, 1)
    assert a == b


def test_planar_nff_brick_wall_measured():
    # every node of the 2D brick wall is a T-junction
    s = stats(build("brick_wall_2d"))
    assert (s.n_bar, s.v_bar) == (2, 4)
    assert planar_nff_relation(s.v_bar, 0)[1] == s.n_bar


def test_spherical_nff_examples():
    assert spherical_nff_relation(3, mpq(1, 2), 1) == 3
    assert spherical_nff_relation(3, mpq(2, 7), 1) == 4
    with pytest.raises(DegenerateDenominator):
        spherical_nff_relation(1, 1, 1)


@given(pos, pos)
def test_spherical_nff_reduces_to_identity(n, v):
    # the denominator n - h = n^2 / (n + v) never vanishes
    mu = 2 - harmonic_degree(n, v)
    assert spherical_nff_relation(n, mu, 1) == v


def test_conjecture_predicate():
    assert conjecture_predicate(stats(build("cubic")), 3)
    assert not conjecture_predicate(stats(build("brick_wall_3d")), 3)
    assert not conjecture_predicate(3, 3)
    assert conjecture_predicate(4, 3)
    assert not conjecture_predicate(mpq(41, 10), 3)
