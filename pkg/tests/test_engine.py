import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperlace import cube
from hyperlace.engine import base_solve, classify, ham_path_laceable
from hyperlace.errors import Inadmissible, SameParity
from hyperlace.faults import FaultSet, check_conditions
from hyperlace.oracle import InstanceSpec, random_instance
from hyperlace.paths import verify_hamiltonian_path


def crowded_instance(n, rng):
    """Admissible F at the bound with a degree-2 vertex w and most faults on w's side of one of its faulty dimensions.

    Such sets push |F_0| over the inductive bound and reach cases 2-4.
    """
    k = 4 * n - 17
    while True:
        w = rng.randrange(1 << n)
        dims = rng.sample(range(1, n + 1), n - 2)
        F = {cube.edge(w, cube.neighbor(n, w, j)) for j in dims}
        b = cube.bit_of(n, dims[0])
        side = [e for e in cube.all_edges(n) if not (e[0] ^ w) & b and not (e[1] ^ w) & b]
        while len(F) < k:
            F.add(rng.choice(side))
        F = FaultSet(n, F)
        if check_conditions(n, F).admissible:
            return F


def endpoints(n, rng):
    x = rng.randrange(1 << n)
    y = rng.choice([u for u in range(1 << n) if cube.parity(u) != cube.parity(x)])
    return x, y


def check_trace(n, trace):
    for e in trace.splits():
        assert classify(e.n, e.f0) == e.case
        lo = {1: None, 2: 4 * e.n - 20, 3: 4 * e.n - 19, 4: 4 * e.n - 18}[e.case]
        if lo is None:
            assert e.f0 <= 4 * e.n - 21
        else:
            assert e.f0 == lo
        assert e.fc >= 1
        assert e.subcase.split(".")[0] == str(e.case)


def test_fault_free_q5():
    path, trace = ham_path_laceable(5, FaultSet(5), 0, 1)
    assert len(path) == 32 and verify_hamiltonian_path(5, None, 0, 1, path).ok
    assert trace.entries[0].kind == "fault-free"


def test_base_solve_small():
    assert base_solve(2, FaultSet(2), 0b00, 0b01) in ([0, 2, 3, 1],)
    F = FaultSet(4, [(0b0010, 0b0011), (0b1100, 0b1110)])
    assert verify_hamiltonian_path(4, F, 0, 1, base_solve(4, F, 0, 1)).ok


def test_base_solve_n6_at_base_bound():
    F, x, y = random_instance(InstanceSpec(6, 7, seed=4))
    assert verify_hamiltonian_path(6, F, x, y, base_solve(6, F, x, y)).ok


def test_base_solve_escapes_search_stall():
    # plain backtracking needs millions of nodes here; the split route does not
    F = FaultSet(6, [(20, 28), (34, 42), (38, 46), (42, 46), (44, 46), (46, 47)])
    assert verify_hamiltonian_path(6, F, 13, 40, base_solve(6, F, 13, 40)).ok
    F7 = FaultSet(7, [(20, 84), (30, 94), (36, 44), (46, 62), (66, 74), (70, 78), (74, 78),
                      (76, 78), (78, 79), (78, 94), (112, 116)])
    path, _ = ham_path_laceable(7, F7, 13, 72)
    assert verify_hamiltonian_path(7, F7, 13, 72, path).ok


def test_rejections():
    F = FaultSet(5, cube.layer_edges(5, 2)[:4])
    with pytest.raises(Inadmissible) as info:
        ham_path_laceable(5, F, 0, 1)
    assert "fault bound exceeded" in str(info.value)
    with pytest.raises(SameParity):
        ham_path_laceable(5, FaultSet(5), 0, 3)
    with pytest.raises(ValueError):
        ham_path_laceable(6, FaultSet(5), 0, 1)


@pytest.mark.parametrize("n", [7, 8])
def test_case_one_both_shapes(n):
    seen = set()
    for seed in range(40):
        F, x, y = random_instance(InstanceSpec(n, 4 * n - 17, seed=seed))
        path, trace = ham_path_laceable(n, F, x, y)
        check_trace(n, trace)
        seen.add(trace.splits()[0].subcase)
    assert {"1.1", "1.2"} <= seen


def test_reserved_cases_reached_and_verified():
    rng = random.Random(2024)
    top = set()
    for _ in range(250):
        F = crowded_instance(7, rng)
        x, y = endpoints(7, rng)
        path, trace = ham_path_laceable(7, F, x, y)
        check_trace(7, trace)
        top.add(trace.splits()[0].subcase)
    for label in ("2.1.1", "2.2.1", "2.3", "3.1.1", "3.2.1", "3.3", "4.1", "4.2", "4.3"):
        assert label in top, label


def test_case_four_resplit_recorded():
    rng = random.Random(77)
    for _ in range(600):
        F = crowded_instance(7, rng)
        x, y = endpoints(7, rng)
        _, trace = ham_path_laceable(7, F, x, y)
        notes = [nt for e in trace.splits() for nt in e.notes]
        if any("re-split" in nt for nt in notes):
            head = trace.splits()[0]
            assert head.rule.endswith("4-resplit") and head.case < 4
            return
    pytest.fail("no case-4 re-split in 600 crowded instances")


@pytest.mark.parametrize("n", [9, 10])
def test_crowded_higher_dimensions(n):
    rng = random.Random(n)
    for _ in range(15):
        F = crowded_instance(n, rng)
        x, y = endpoints(n, rng)
        path, trace = ham_path_laceable(n, F, x, y)
        check_trace(n, trace)


@settings(max_examples=40, deadline=None)
@given(st.integers(5, 9), st.integers(0, 2**31))
def test_random_admissible_instances(n, seed):
    rng = random.Random(seed)
    F, x, y = random_instance(InstanceSpec(n, rng.randint(0, 4 * n - 17), seed=seed))
    path, trace = ham_path_laceable(n, F, x, y)
    assert verify_hamiltonian_path(n, F, x, y, path).ok
    assert cube.parity(path[0]) != cube.parity(path[-1])
    check_trace(n, trace)


def test_deterministic():
    F, x, y = random_instance(InstanceSpec(9, 19, seed=8))
    a = ham_path_laceable(9, F, x, y)
    b = ham_path_laceable(9, F, x, y)
    assert a[0] == b[0] and a[1].render() == b[1].render()
