import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mosaics.constructions import (
    CONSTRUCTIBLE,
    IterationPlan,
    LayerRecipe,
    barycentric_subdivision,
    build,
    dual_foam_step,
    evaluate_target,
    foam_step,
    harmonic_target,
    layered_mix,
    layered_strip,
    partial_dual_foam_step,
    strip_counts,
)
from mosaics.errors import (
    EpsilonTooLarge,
    InvalidRatio,
    NotSimplicial,
    OutOfRange,
    UnknownName,
    VertexFigureNotSimplex,
)
from mosaics.exact import mpq
from mosaics.formulas import foam_recursion
from mosaics.periodic import stats
from mosaics.tables import check_table1_geometric


def test_every_constructible_name_builds():
    for name in CONSTRUCTIBLE:
        M = build(name)
        M.validate()
        assert stats(M).h_bar > 0


def test_table1_constructible_rows():
    checks = check_table1_geometric()
    assert len(checks) >= 15
    bad = [c.line() for c in checks if not c.ok]
    assert not bad, bad


@pytest.mark.parametrize(
    "name, row",
    [
        ("cubic", (8, 8, 6, 4)),
        ("alternated_cubic", (14, mpq(14, 3), mpq(16, 3), mpq(7, 2))),
        ("bitruncated_cubic", (4, 24, 14, mpq(24, 7))),
        ("hyperplane_generic", (8, 8, 6, 4)),
        ("prism:hexagonal", (6, 12, 8, 4)),
        ("prism:triangular", (12, 6, 5, 4)),
        ("brick_wall_3d", (2, 8, 6, mpq(8, 5))),
    ],
)
def test_known_rows(name, row):
    assert stats(build(name)).row() == row


def test_brick_wall_is_not_face_to_face():
    assert not build("brick_wall_3d").face_to_face
    assert not build("brick_wall_2d").face_to_face


def test_foam_iterates_follow_recursion():
    M = build("bitruncated_cubic")
    for k in (1, 2):
        M = foam_step(M)
        s = stats(M)
        assert s.v_bar == foam_recursion(24, 3, k)
        assert s.n_bar == 4
    assert stats(M).v_bar == mpq(384, 31)


def test_dual_foam_iterates():
    M = barycentric_subdivision(build("cubic"))
    assert stats(M).n_bar == 24
    prev = stats(M).h_bar
    for k in (1, 2):
        M = dual_foam_step(M)
        s = stats(M)
        assert s.n_bar == foam_recursion(24, 3, k)
        assert s.v_bar == 4
        assert s.h_bar < prev
        prev = s.h_bar


def test_planar_foam():
    M = foam_step(build("hexagonal"))
    s = stats(M)
    assert s.n_bar == 3
    assert s.v_bar == foam_recursion(6, 2, 1)


@pytest.mark.parametrize("name", ["cubic", "prism:square", "prism:triangular"])
def test_barycentric_of_prisms(name):
    s = stats(barycentric_subdivision(build(name)))
    assert s.v_bar == 4 and s.n_bar == 24 and s.h_bar == mpq(24, 7)


@pytest.mark.parametrize("name", ["alternated_cubic", "bitruncated_cubic", "prism:hexagonal"])
def test_barycentric_counts_flags(name):
    M = build(name)
    base = stats(M)
    # each edge of a 3-polytope lies in exactly four flags
    flags = sum(4 * len(c.polytope.edges) for c in M.cells)
    faces = base.N_v + base.N_e + base.N_f + base.N_c
    s = stats(barycentric_subdivision(M))
    assert s.cell_degrees == {4: flags}
    assert s.N_v == faces
    assert s.n_bar == mpq(4 * flags, faces)


def test_partial_dual_foam_keeps_other_cells():
    M = barycentric_subdivision(build("cubic"))
    P = partial_dual_foam_step(M, [0])
    assert len(P.cells) == len(M.cells) + 3


def test_construction_errors():
    with pytest.raises(UnknownName):
        build("no_such_thing")
    with pytest.raises(UnknownName):
        build("foam:x:cubic")
    with pytest.raises(VertexFigureNotSimplex):
        foam_step(build("cubic"))
    with pytest.raises(EpsilonTooLarge):
        foam_step(build("bitruncated_cubic"), eps=mpq(1, 2))
    with pytest.raises(NotSimplicial):
        dual_foam_step(build("alternated_cubic"))


@pytest.mark.parametrize("k, l", [(1, 1), (2, 1), (1, 2)])
def test_layered_strip_matches_counts(k, l):
    M = layered_strip(k, l)
    s = stats(M)
    c = strip_counts(k, l)
    assert (s.N_c, s.N_v) == (c["cells"], c["nodes"])
    assert s.v_bar * s.N_c == c["incidences"]
    assert s.f_bar * s.N_c == c["facets"]
    assert s.e_bar * s.N_c == c["edges"]
    mix = layered_mix(LayerRecipe(strips=((k, l),)))
    assert mix.row() == s.row()
    assert (mix.N_f, mix.N_e) == (s.N_f, s.N_e)


def test_layered_limits():
    assert layered_mix(LayerRecipe(lam=1)).h_bar == 4
    assert layered_mix(LayerRecipe(lam=0)).h_bar == mpq(24, 7)
    with pytest.raises(InvalidRatio):
        LayerRecipe(lam=mpq(3, 2))
    with pytest.raises(InvalidRatio):
        LayerRecipe()


@settings(max_examples=80, deadline=None)
@given(st.fractions(min_value=3, max_value=4, max_denominator=1000).filter(lambda x: x > 3))
def test_harmonic_target_is_exact(h):
    h = mpq(h.numerator, h.denominator)
    plan = harmonic_target(h)
    assert evaluate_target(plan) == h
    if h >= mpq(24, 7):
        assert isinstance(plan, LayerRecipe)
    else:
        assert isinstance(plan, IterationPlan) and 0 <= plan.fraction <= 1


def test_harmonic_target_range():
    for bad in (3, mpq(41, 10), 5):
        with pytest.raises(OutOfRange):
            harmonic_target(bad)
    with pytest.raises(OutOfRange):
        harmonic_target(mpq(7, 2), d=4)
