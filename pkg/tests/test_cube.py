import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperlace import cube


def v(s):
    return int(s, 2)


def test_vertex_parity():
    assert cube.parity(v("00000")) == 0
    assert cube.parity(v("10000")) == 1
    assert cube.parity(v("01101")) == 1


def test_edge_parity_uses_lower_endpoint():
    assert cube.edge_parity(cube.edge(v("000"), v("001"))) == 0
    assert cube.edge_parity(cube.edge(v("011"), v("111"))) == 0
    assert cube.edge_parity(cube.edge(v("101"), v("100"))) == 1


def test_edge_dimension_counts_from_the_left():
    assert cube.edge_dimension(5, (v("00000"), v("00100"))) == 3
    assert cube.edge_dimension(3, cube.edge(v("111"), v("110"))) == 3
    with pytest.raises(cube.CubeError):
        cube.edge(v("00"), v("11"))


def test_edge_is_canonical():
    assert cube.edge(5, 4) == cube.edge(4, 5) == (4, 5)


def test_neighbor():
    assert cube.neighbor(3, v("000"), 1) == v("100")
    assert cube.neighbor(3, v("101"), 3) == v("100")


@given(st.integers(1, 10).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1),
                                                      st.integers(1, n))))
def test_neighbor_is_an_involution(args):
    n, x, j = args
    assert cube.neighbor(n, cube.neighbor(n, x, j), j) == x


def test_layer_sizes():
    assert len(cube.layer_edges(3, 1)) == 4
    assert cube.layer_edges(1, 1) == [(0, 1)]
    layers = [set(cube.layer_edges(5, j)) for j in range(1, 6)]
    assert sum(map(len, layers)) == 80
    assert len(set().union(*layers)) == 80


def test_project_examples():
    assert cube.project(4, v("0110"), 1) == (0, v("110"))
    assert cube.project(4, v("0110"), 3) == (1, v("010"))


@given(st.integers(2, 12).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1),
                                                      st.integers(1, n))))
def test_embed_inverts_project(args):
    n, x, j = args
    theta, w = cube.project(n, x, j)
    assert cube.embed(n, w, j, theta) == x
    assert cube.project(n, cube.embed(n, w, j, 1 - theta), j) == (1 - theta, w)


def test_projection_preserves_adjacency():
    n = 5
    for j in range(1, n + 1):
        for a, b in cube.all_edges(n):
            ta, pa = cube.project(n, a, j)
            tb, pb = cube.project(n, b, j)
            if a ^ b == cube.bit_of(n, j):
                assert pa == pb and {ta, tb} == {0, 1}
            else:
                assert ta == tb and cube.hamming(pa, pb) == 1


def test_text_forms_round_trip():
    assert cube.format_vertex(5, v("01101")) == "01101"
    assert cube.parse_vertex(5, "01101") == v("01101")
    e = cube.parse_edge(5, "00001 00000")
    assert e == (0, 1) and cube.format_edge(5, e) == "00000 00001"
    for bad in ("0110", "0a101", "011011"):
        with pytest.raises(cube.CubeError):
            cube.parse_vertex(5, bad)


@pytest.mark.parametrize("n", range(1, 11))
def test_bipartite(n):
    assert all(cube.parity(a) != cube.parity(b) for a, b in cube.all_edges(n))


@pytest.mark.parametrize("n", range(1, 7))
def test_parity_matches_distance(n):
    for x, y in itertools.product(range(1 << n), repeat=2):
        assert (cube.parity(x) == cube.parity(y)) == (cube.hamming(x, y) % 2 == 0)
