import random

import pytest

from hyperlace import cube
from hyperlace.construct import (
    ham_path_avoiding_edge,
    ham_path_fault_free,
    ham_path_through_edge,
    spanning_2path,
    spanning_3path_minus_edge,
    spanning_k_path,
)
from hyperlace.errors import ConditionViolated, ContractViolation, SameParity
from hyperlace.faults import FaultSet
from hyperlace.paths import path_edges, verify_hamiltonian_path, verify_spanning_k_path


def v(s):
    return int(s, 2)


def opposite_pairs(n):
    return [(x, y) for x in range(1 << n) for y in range(1 << n) if cube.parity(x) != cube.parity(y)]


def test_fault_free_small():
    assert ham_path_fault_free(1, 0, 1) == [0, 1]
    assert ham_path_fault_free(2, v("00"), v("01")) == [v("00"), v("10"), v("11"), v("01")]
    p = ham_path_fault_free(3, v("000"), v("111"))
    assert verify_hamiltonian_path(3, None, 0, 7, p).ok


def test_fault_free_all_pairs_q5():
    for x, y in opposite_pairs(5):
        assert verify_hamiltonian_path(5, None, x, y, ham_path_fault_free(5, x, y)).ok


def test_fault_free_rejects_same_parity():
    with pytest.raises(SameParity):
        ham_path_fault_free(4, 0, 3)


def test_through_edge_forced_at_n2():
    assert ham_path_through_edge(2, (v("01"), v("11")), v("00"), v("10")) == [v("00"), v("01"), v("11"), v("10")]


def test_through_edge_q4_all():
    for f in cube.all_edges(4):
        for x, y in opposite_pairs(4):
            if f == cube.edge(x, y) if cube.hamming(x, y) == 1 else False:
                with pytest.raises(ContractViolation):
                    ham_path_through_edge(4, f, x, y)
                continue
            p = ham_path_through_edge(4, f, x, y)
            assert verify_hamiltonian_path(4, None, x, y, p).ok
            assert f in path_edges(p)


def test_avoiding_edge_q3_exhaustive():
    for f in cube.all_edges(3):
        for x, y in opposite_pairs(3):
            p = ham_path_avoiding_edge(3, f, x, y)
            assert verify_hamiltonian_path(3, FaultSet(3, [f]), x, y, p).ok


def test_avoiding_edge_needs_n3():
    with pytest.raises(ContractViolation):
        ham_path_avoiding_edge(2, (0, 1), 0, 2)


def test_two_path_as_edge():
    u, w = v("0000"), v("0001")
    paths = spanning_2path(4, None, (u, w), (v("0110"), v("1011")), uv_as_edge=True)
    assert paths[0] == [u, w]
    assert verify_spanning_k_path(4, None, [(u, w), (v("0110"), v("1011"))], paths).ok


@pytest.mark.parametrize("n", [4, 5, 6])
def test_two_path_with_faults(n):
    rng = random.Random(n)
    edges = list(cube.all_edges(n))
    for _ in range(60):
        F = FaultSet(n, rng.sample(edges, 2 * n - 7))
        while True:
            a, b, c, d = rng.sample(range(1 << n), 4)
            if cube.parity(a) != cube.parity(b) and cube.parity(c) != cube.parity(d):
                break
        paths = spanning_2path(n, F, (a, b), (c, d))
        assert verify_spanning_k_path(n, F, [(a, b), (c, d)], paths).ok


def test_two_path_rejects_unbalanced():
    with pytest.raises(ContractViolation):
        spanning_2path(5, None, (0, 3), (5, 6))


def test_k_path_inequality_examples():
    assert verify_hamiltonian_path(3, None, 0, 1, spanning_k_path(3, [(0, 1)])[0]).ok
    pairs = [(v("00000"), v("00111")), (v("11000"), v("10101"))]
    assert verify_spanning_k_path(5, None, pairs, spanning_k_path(5, pairs)).ok
    with pytest.raises(ConditionViolated):
        spanning_k_path(4, [(v("0000"), v("0111")), (v("1100"), v("1011"))])


def _three_path_instance(rng, n):
    edges = list(cube.all_edges(n))
    while True:
        f, uv = rng.sample(edges, 2)
        if set(f) & set(uv):
            continue
        x, y, w, z = rng.sample(range(1 << n), 4)
        if len({*uv, x, y, w, z}) == 6 and cube.parity(x) != cube.parity(y) and cube.parity(w) != cube.parity(z):
            return f, uv, (x, y), (w, z)


def test_three_path_with_pairs_on_the_faulty_half():
    n = 5
    f = (v("10000"), v("10001"))
    uv = (v("00010"), v("00011"))
    xy, wz = (v("10100"), v("11001")), (v("10110"), v("11011"))
    ps = spanning_3path_minus_edge(n, f, uv, xy, wz)
    assert verify_spanning_k_path(n, FaultSet(n, [f]), [uv, xy, wz], ps).ok


@pytest.mark.parametrize("n", [5, 6])
def test_three_path_random(n):
    rng = random.Random(100 + n)
    for _ in range(40):
        f, uv, xy, wz = _three_path_instance(rng, n)
        ps = spanning_3path_minus_edge(n, f, uv, xy, wz)
        assert verify_spanning_k_path(n, FaultSet(n, [f]), [uv, xy, wz], ps).ok


def test_three_path_contracts():
    f, uv = (0, 1), (2, 3)
    with pytest.raises(ContractViolation):
        spanning_3path_minus_edge(5, f, uv, (3, 4), (8, 9))
    with pytest.raises(ContractViolation):
        spanning_3path_minus_edge(5, f, (1, 3), (4, 5), (8, 9))
    with pytest.raises(ContractViolation):
        spanning_3path_minus_edge(4, f, uv, (4, 5), (8, 9))
