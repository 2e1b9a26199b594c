from fractions import Fraction

import pytest

import jetbound

TRIANGLE = [(0, 0), (1, 0), (0, 1)]
SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]
TETRAHEDRON = [(0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)]
COLLISION = [(0, 0), (0, 1), (1, 1), (2, 1), (3, 1), (0, 2), (1, 2),
             (2, 2), (3, 2), (4, 2), (5, 2), (0, 3), (1, 3)]


def test_simplex_is_exactly_one():
    r = jetbound.seshadri(TRIANGLE, k_budget=3, certify=True)
    assert r["lower"] == 1
    assert r["exact"] is True
    assert r["certified"] is True


def test_square_has_root_two_upper_bound():
    r = jetbound.seshadri(SQUARE, k_budget=3)
    assert r["lower"] == 1
    assert r["upper"]["radicand"] == 2
    assert r["upper"]["root"] == 2
    assert r["upper"]["value"] is None


def test_rational_vertices():
    r = jetbound.seshadri([(0, 0), (Fraction(5, 2), 0), ("0", "5/2")], k_budget=2)
    assert isinstance(r["lower"], Fraction)


def test_collision_rank():
    r = jetbound.jets(COLLISION, generators=[(6, 0), (4, 1), (2, 2), (1, 3), (0, 4)], mbar=[3, 1])
    assert r["rank"] == 13 and r["full"]


def test_collinear_certificate():
    r = jetbound.jets([(0, 0), (1, 1), (2, 2)])
    assert r["max_jet_order"] == 0
    assert r["certificate"] is not None


def test_lattice_change():
    r = jetbound.lattice_change(TETRAHEDRON, [[1, 1, 0], [1, 0, 1], [0, 1, 1]], k_budget=3)
    assert r["degree"] == 2
    assert r["result"]["lower"] == 1
    assert r["result"]["upper"]["value"] == 1


def test_multi_is_deterministic_for_a_seed():
    a = jetbound.multi(TETRAHEDRON, [1, 1], k_budget=2, seed=7)
    b = jetbound.multi(TETRAHEDRON, "1,1", k_budget=2, seed=7)
    assert a == b
    assert a["one_sided"] is True


def test_fan_decomposition():
    r = jetbound.decompose([(0, 0), (2, 1), (1, 2), (1, 1)], [(3, 1, 2), (3, 2, 0), (3, 0, 1)], parent=[0, 1, 2],
                           k_budget=3)
    assert r["valid"] and r["regular"]
    assert r["result"]["lower"] == 1
    assert r["result"]["exact"] is True


def test_pinwheel_is_not_regular():
    pool = [(0, 0), (4, 0), (0, 4), (1, 1), (2, 1), (1, 2)]
    cells = [(3, 4, 5), (0, 1, 4), (0, 4, 3), (1, 2, 5), (1, 5, 4), (2, 0, 3), (2, 3, 5)]
    r = jetbound.decompose(pool, cells, parent=[0, 1, 2])
    assert r["valid"] and not r["regular"]
    assert r["farkas"]


def test_input_errors_raise_value_error():
    with pytest.raises(ValueError):
        jetbound.seshadri(SQUARE, k_budget=0)
    with pytest.raises(ValueError):
        jetbound.multi(SQUARE, "1,-1")
    with pytest.raises(TypeError):
        jetbound.seshadri([(0, 0), (0.5, 1), (1, 0)])


def test_canonical_round_trip():
    text = jetbound.canonical({"vertices": [[0, 0], [1, 0], [0, 1]]})
    assert jetbound.canonical(__import__("json").loads(text)) == text
