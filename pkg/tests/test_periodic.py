import pytest

from mosaics.constructions import build, cubic
from mosaics.errors import DimensionMismatch, InvalidTiling, NonPositiveParameter, NotFaceToFace
from mosaics.exact import mpq
from mosaics.periodic import (
    PeriodicMosaic,
    angle_tiling_sums,
    average_total_angle,
    dual_nij,
    from_json,
    harmonic,
    measure_nij,
    nij_from_params,
    stats,
    to_json,
    windowed_stats,
)

FTF_3D = ["cubic", "alternated_cubic", "bitruncated_cubic", "hyperplane_generic", "prism:triangular",
          "prism:trihexagonal", "prism:snub_square", "barycentric:cubic", "foam:1:bitruncated_cubic"]


def test_cubic_golden_stats():
    s = stats(cubic())
    assert s.row() == (8, 8, 6, 4)
    assert (s.N_c, s.N_v, s.N_f, s.N_e) == (1, 1, 3, 3)


def test_harmonic_identity():
    assert harmonic(mpq(14), mpq(14, 3)) == mpq(7, 2)
    assert harmonic(4, 24) == mpq(24, 7)


@pytest.mark.parametrize("name", FTF_3D)
def test_measured_nij_matches_parameters(name):
    M = build(name)
    s = stats(M)
    assert measure_nij(M) == nij_from_params(s.v_bar, s.f_bar, s.n_bar)


@pytest.mark.parametrize("name", FTF_3D)
def test_euler_relation_per_period(name):
    s = stats(build(name))
    assert s.N_v - s.N_e + s.N_f - s.N_c == 0


def test_dual_matrix_is_reflection():
    A = nij_from_params(8, 6, 8)
    D = dual_nij(A)
    assert D[0, 3] == A[3, 0]
    assert dual_nij(D) == A
    # octahedral nodes of the alternated cubic: the dual has v and n swapped
    P = nij_from_params(mpq(14, 3), mpq(16, 3), 14)
    assert P[3, 0] == mpq(14, 3) and P[0, 3] == 14


def test_nij_rejects_bad_input():
    with pytest.raises(NonPositiveParameter):
        nij_from_params(0, 6, 8)
    with pytest.raises(DimensionMismatch):
        measure_nij(build("square"))
    with pytest.raises(NotFaceToFace):
        measure_nij(build("brick_wall_3d"))


@pytest.mark.parametrize("name", ["cubic", "alternated_cubic", "bitruncated_cubic", "prism:hexagonal"])
def test_json_roundtrip(name):
    M = build(name)
    back = from_json(to_json(M))
    assert back == M
    assert stats(back).row() == stats(M).row()


def test_json_rejects_bad_shape():
    text = to_json(cubic()).replace('"dimension": 3', '"dimension": 2')
    with pytest.raises(DimensionMismatch):
        from_json(text)


@pytest.mark.parametrize("name", ["cubic", "alternated_cubic", "bitruncated_cubic", "prism:triangular"])
def test_windowed_estimator_agrees(name):
    M = build(name)
    s = stats(M)
    n, v, h = windowed_stats(M, 4)
    assert (n, v, h) == (s.n_bar, s.v_bar, s.h_bar)


def test_angle_sums_tile():
    M = build("alternated_cubic")
    nodes, cells = angle_tiling_sums(M)
    assert all(x == pytest.approx(4 * 3.141592653589793, abs=1e-9) for x in nodes + cells)
    oi, oe, total = average_total_angle(M)
    assert total * stats(M).h_bar == pytest.approx(4 * 3.141592653589793, abs=1e-9)


def test_validate_catches_missing_cell():
    M = build("alternated_cubic")
    broken = PeriodicMosaic(M.lattice, M.nodes, M.cells[:-1], True)
    with pytest.raises(InvalidTiling):
        broken.validate()


def test_full_validation_passes():
    for name in ("cubic", "alternated_cubic", "bitruncated_cubic", "brick_wall_3d"):
        build(name).validate(full=True)
