import math

import numpy as np
import pytest

from mosaics.errors import DegenerateInput, OriginNotInterior, UnknownName
from mosaics.exact import mpq
from mosaics.geom import convex_hull
from mosaics.spherical import (
    catalog_names,
    cell_areas,
    external_angles,
    from_polyhedron,
    polar_dual,
    polyhedron,
    read_off,
    spherical_stats,
    write_off,
)

# (V, E, F) from the standard enumeration of uniform polyhedra
F_VECTORS = {
    "tetrahedron": (4, 6, 4),
    "cube": (8, 12, 6),
    "octahedron": (6, 12, 8),
    "dodecahedron": (20, 30, 12),
    "icosahedron": (12, 30, 20),
    "truncated_tetrahedron": (12, 18, 8),
    "cuboctahedron": (12, 24, 14),
    "truncated_cube": (24, 36, 14),
    "truncated_octahedron": (24, 36, 14),
    "rhombicuboctahedron": (24, 48, 26),
    "truncated_cuboctahedron": (48, 72, 26),
    "snub_cube": (24, 60, 38),
    "icosidodecahedron": (30, 60, 32),
    "truncated_dodecahedron": (60, 90, 32),
    "truncated_icosahedron": (60, 90, 32),
    "rhombicosidodecahedron": (60, 120, 62),
    "truncated_icosidodecahedron": (120, 180, 62),
    "snub_dodecahedron": (60, 150, 92),
}
for _n in range(3, 13):
    F_VECTORS[f"prism{_n}"] = (2 * _n, 3 * _n, _n + 2)
    F_VECTORS[f"antiprism{_n}"] = (2 * _n, 4 * _n, 2 * _n + 2)


def test_catalog_is_complete():
    assert set(catalog_names()) == set(F_VECTORS)
    assert len(catalog_names()) == 38


@pytest.mark.parametrize("name", sorted(F_VECTORS))
def test_catalog_identities(name):
    S = from_polyhedron(polyhedron(name), name)
    assert (S.N_v, S.N_e, S.N_c) == F_VECTORS[name]
    assert S.N_v - S.N_e + S.N_c == 2
    st = spherical_stats(S)
    assert st.h_bar == 2 - st.mu_bar
    assert st.mu_bar == mpq(4, S.N_c + S.N_v)
    assert st.h_bar == pytest.approx(2 * math.pi / st.omega_bar, abs=1e-9)
    assert math.fsum(st.areas) == pytest.approx(4 * math.pi, abs=1e-9)
    for row in external_angles(S):
        assert math.fsum(row) == pytest.approx(2 * math.pi, abs=1e-9)
    # Steinitz band and the Euler-type identity for the cell degree
    assert S.N_c <= 2 * S.N_v - 4
    assert 2 * S.N_v == st.v_bar * S.N_c - 2 * S.N_c + 4


def test_cube_values():
    st = spherical_stats(from_polyhedron(polyhedron("cube")))
    assert (st.n_bar, st.v_bar, st.mu_bar, st.h_bar) == (3, 4, mpq(2, 7), mpq(12, 7))
    # each face of the cube projects to a sixth of the sphere
    assert all(a == pytest.approx(4 * math.pi / 6, abs=1e-12) for a in st.areas)


def test_tetrahedron_face_area():
    st = spherical_stats(from_polyhedron(polyhedron("tetrahedron")))
    assert st.areas[0] == pytest.approx(math.pi, abs=1e-12)


@pytest.mark.parametrize("name", ["cube", "dodecahedron", "truncated_octahedron", "prism5", "snub_cube"])
def test_polar_dual_swaps_degrees(name):
    P = polyhedron(name)
    D = polar_dual(P)
    a = spherical_stats(from_polyhedron(P))
    b = spherical_stats(from_polyhedron(D))
    assert (b.n_bar, b.v_bar) == (a.v_bar, a.n_bar)
    assert b.h_bar == a.h_bar


def test_random_polyhedra_identities():
    rng = np.random.default_rng(7)
    for _ in range(5):
        P = convex_hull([tuple(x) for x in rng.standard_normal((20, 3))])
        if not all(b > 0 for _, b in P.facet_planes()):
            continue
        S = from_polyhedron(P)
        st = spherical_stats(S)
        assert math.fsum(cell_areas(S)) == pytest.approx(4 * math.pi, abs=1e-9)
        assert st.h_bar == pytest.approx(2 * math.pi / st.omega_bar, abs=1e-9)


def test_origin_must_be_interior():
    P = convex_hull([(x, y, z) for x in (1, 2) for y in (0, 1) for z in (0, 1)])
    with pytest.raises(OriginNotInterior):
        from_polyhedron(P)
    with pytest.raises(OriginNotInterior):
        polar_dual(P)


def test_unknown_name():
    with pytest.raises(UnknownName):
        polyhedron("rhombic_triacontahedron")


@pytest.mark.parametrize("name", ["cube", "icosahedron", "cuboctahedron", "antiprism5"])
def test_off_roundtrip(name):
    P = polyhedron(name)
    Q = read_off(write_off(P))
    assert Q.f_vector() == P.f_vector()
    if P.exact:
        assert Q.vertices == P.vertices
    else:
        assert np.allclose(Q.vertex_array(), P.vertex_array())


def test_off_rejects_nonconvex_input():
    text = "OFF\n5 0 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n1/4 1/4 1/4\n"
    with pytest.raises(DegenerateInput):
        read_off(text)
    with pytest.raises(DegenerateInput):
        read_off("OFF\n4 4\n0 0 0\n")
