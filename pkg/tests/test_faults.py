import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperlace import cube
from hyperlace.faults import (
    FaultSet,
    InstanceParseError,
    NoDirection,
    check_conditions,
    choose_direction,
    direction_ok,
    fault_bound,
    format_instance,
    parse_instance,
    separating_direction,
    split,
)


def v(s):
    return int(s, 2)


def star(n, w, dims):
    return FaultSet(n, [cube.edge(w, cube.neighbor(n, w, j)) for j in dims])


@st.composite
def fault_sets(draw, n_min=3, n_max=8, max_faults=12):
    n = draw(st.integers(n_min, n_max))
    edges = list(cube.all_edges(n))
    picks = draw(st.lists(st.sampled_from(edges), max_size=max_faults, unique=True))
    return FaultSet(n, picks)


def test_bound():
    assert fault_bound(5) == 3
    assert fault_bound(7) == 11
    assert fault_bound(4) == 1
    assert fault_bound(3) == 0


def test_conditions_empty():
    r = check_conditions(5, FaultSet(5))
    assert (r.min_degree, r.degree2_count, r.fault_bound_ok, r.admissible) == (5, 0, True, True)


def test_conditions_bound_exceeded():
    r = check_conditions(5, FaultSet(5, list(cube.layer_edges(5, 1))[:4]))
    assert not r.fault_bound_ok and not r.admissible
    assert "fault bound exceeded" in r.problems()[0]


def test_five_faults_at_one_vertex_n7():
    F = star(7, 0, range(1, 6))
    r = check_conditions(7, F)
    assert F.degree(0) == 2
    assert (r.min_degree, r.degree2_count, r.admissible) == (2, 1, True)


def test_degree_one_is_rejected():
    F = star(5, 0, range(1, 5))
    r = check_conditions(5, F)
    assert r.min_degree == 1 and not r.admissible


@given(fault_sets())
def test_degree_cache_matches_recount(F):
    n = F.n
    for x in range(1 << n):
        live = sum(1 for y in cube.neighbors(n, x) if cube.edge(x, y) not in F.edges)
        assert F.degree(x) == live
    if F.edges:
        drop = sorted(F.edges)[: len(F) // 2 + 1]
        G = F.without(drop)
        assert G.degrees == FaultSet(n, F.edges - set(drop)).degrees


@given(fault_sets(), st.data())
def test_split_partitions(F, data):
    n = F.n
    j = data.draw(st.integers(1, n))
    view = split(n, F, j)
    assert len(view.F0) + len(view.F1) + len(view.Fc) == len(F)
    assert all(cube.edge_dimension(n, e) == j for e in view.Fc)
    back = {view.up_edge(0, e) for e in view.F0.edges} | {view.up_edge(1, e) for e in view.F1.edges}
    assert back | set(view.Fc) == set(F.edges)


def test_split_all_crossing():
    F = FaultSet(4, cube.layer_edges(4, 2)[:3])
    view = split(4, F, 2)
    assert len(view.Fc) == 3 and not view.F0.edges and not view.F1.edges


def test_split_one_side():
    F = FaultSet(4, [(v("0000"), v("0001")), (v("0010"), v("0110"))])
    view = split(4, F, 1)
    assert len(view.F0) == 2 and not view.F1.edges and not view.Fc


def test_separating_direction_examples():
    e, f = (v("000"), v("001")), (v("110"), v("111"))
    assert separating_direction(3, e, f) == 1
    assert separating_direction(2, (v("00"), v("01")), (v("10"), v("11"))) == 1
    with pytest.raises(ValueError):
        separating_direction(3, (0, 1), (1, 3))


@pytest.mark.parametrize("n", range(2, 6))
def test_separating_direction_exists_for_all_disjoint_pairs(n):
    edges = list(cube.all_edges(n))
    for e in edges:
        for f in edges:
            if set(e) & set(f):
                continue
            j = separating_direction(n, e, f)
            b = cube.bit_of(n, j)
            assert (e[0] ^ e[1]) != b != (f[0] ^ f[1])
            assert (e[0] & b) != (f[0] & b)


def _half_conditions(view):
    m = view.n - 1
    for s in (0, 1):
        G = view.faults(s)
        deg = list(G.degrees)
        r = check_conditions(m, G)
        if r.min_degree < 2 or r.degree2_count > 1:
            return False
        assert deg == [m - sum(1 for e in G.edges if x in e) for x in range(1 << m)]
    return True


def test_direction_star_of_five():
    F = star(7, v("0101010"), range(1, 6))
    j, view = choose_direction(7, F)
    assert j in range(1, 6)
    assert _half_conditions(view) and len(view.Fc) >= 1


def test_direction_single_edge():
    e = cube.layer_edges(7, 4)[9]
    j, view = choose_direction(7, FaultSet(7, [e]))
    assert j == 4 and view.Fc == {e}


def test_direction_orients_larger_side_first():
    rng = random.Random(5)
    edges = list(cube.all_edges(8))
    for _ in range(50):
        F = FaultSet(8, rng.sample(edges, 15))
        if not check_conditions(8, F).admissible:
            continue
        _, view = choose_direction(8, F)
        assert len(view.F0) >= len(view.F1)
        for e in view.F0.edges:
            assert view.side(view.up(0, e[0])) == 0


def test_direction_empty_and_impossible():
    with pytest.raises(ValueError):
        choose_direction(7, FaultSet(7))
    # a degree-1 vertex cannot survive any split
    with pytest.raises(NoDirection):
        choose_direction(7, star(7, 0, range(1, 7)))


@settings(max_examples=60, deadline=None)
@given(st.integers(7, 9), st.integers(0, 2**32))
def test_degree_monotone_under_split(n, seed):
    rng = random.Random(seed)
    F = FaultSet(n, rng.sample(list(cube.all_edges(n)), rng.randint(1, 4 * n - 17)))
    j = rng.randint(1, n)
    view = split(n, F, j)
    for x in range(1 << n):
        s = view.side(x)
        assert view.faults(s).degree(view.down(x)) >= F.degree(x) - 1
    assert direction_ok(n, F, j) == (len(view.Fc) >= 1 and _half_conditions(view))


def test_instance_round_trip():
    F = FaultSet(5, [(0, 1), (v("00110"), v("10110"))])
    assert parse_instance(format_instance(F)) == F


def test_instance_parse_errors_carry_line_numbers():
    with pytest.raises(InstanceParseError) as info:
        parse_instance("n=5\n# comment\n00000 00011\n")
    assert info.value.line == 3
    with pytest.raises(InstanceParseError) as info:
        parse_instance("n=5\n00000 00001\n00001 00000\n")
    assert info.value.line == 3 and "duplicate" in str(info.value)
    with pytest.raises(InstanceParseError):
        parse_instance("00000 00001\n")
    with pytest.raises(InstanceParseError):
        parse_instance("")
