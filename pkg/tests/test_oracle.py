import pytest

from hyperlace import cube
from hyperlace.construct import spanning_3path_minus_edge
from hyperlace.faults import FaultSet, check_conditions
from hyperlace.oracle import (
    BudgetExhausted,
    InstanceSpec,
    SearchBudget,
    Unsatisfiable,
    exhaustive_ham_path,
    exhaustive_spanning_k,
    random_instance,
)
from hyperlace.paths import verify_hamiltonian_path, verify_spanning_k_path


def test_fault_free_found():
    r = exhaustive_ham_path(3, None, 0b000, 0b111)
    assert r.found and verify_hamiltonian_path(3, None, 0, 7, r.path).ok


def test_same_parity_absent():
    assert exhaustive_ham_path(3, None, 0b000, 0b011).status == "absent"


def test_degree_one_vertex_in_the_middle_is_absent():
    # vertex 7 keeps one live edge, so it can only be an endpoint
    F = FaultSet(3, [(3, 7), (5, 7)])
    assert exhaustive_ham_path(3, F, 0, 1).status == "absent"
    assert exhaustive_ham_path(3, F, 0, 7).found


def test_n5_admissible_always_found():
    for seed in range(200):
        F, x, y = random_instance(InstanceSpec(5, 3, seed=seed))
        r = exhaustive_ham_path(5, F, x, y)
        assert r.found and verify_hamiltonian_path(5, F, x, y, r.path).ok


def test_two_path_on_q4():
    pairs = [(0b0000, 0b0111), (0b1001, 0b1110)]
    r = exhaustive_spanning_k(4, None, pairs)
    assert r.found and verify_spanning_k_path(4, None, pairs, r.paths).ok


def test_unbalanced_pairs_absent():
    assert exhaustive_spanning_k(4, None, [(0, 3), (5, 6)]).status == "absent"


def test_three_path_instances_agree():
    n, f, uv = 5, (0b10000, 0b10001), (0b00010, 0b00011)
    pairs = [uv, (0b10100, 0b11001), (0b10110, 0b11011)]
    r = exhaustive_spanning_k(n, FaultSet(n, [f]), pairs)
    assert r.found
    assert verify_spanning_k_path(n, FaultSet(n, [f]), pairs, spanning_3path_minus_edge(n, f, *pairs)).ok


def test_budget():
    with pytest.raises(ValueError):
        exhaustive_ham_path(7, None, 0, 1)
    with pytest.raises(BudgetExhausted):
        exhaustive_ham_path(8, FaultSet(8), 0, 1, SearchBudget(node_limit=10, exhaustive=False))
    r = exhaustive_ham_path(7, None, 0, 1, SearchBudget(node_limit=10_000, exhaustive=False))
    assert r.found and verify_hamiltonian_path(7, None, 0, 1, r.path).ok


def test_random_instance_contract():
    F, x, y = random_instance(InstanceSpec(7, 11, seed=1))
    assert len(F) == 11 and check_conditions(7, F).admissible
    assert cube.parity(x) != cube.parity(y)
    with pytest.raises(Unsatisfiable):
        random_instance(InstanceSpec(5, 4))
    assert random_instance(InstanceSpec(8, 9, seed=5)) == random_instance(InstanceSpec(8, 9, seed=5))
    F, _, _ = random_instance(InstanceSpec(5, 6, seed=2, admissible=False))
    assert len(F) == 6


def test_random_endpoints_cover_both_parities():
    xs = {random_instance(InstanceSpec(4, 0, seed=s))[1] for s in range(200)}
    ys = {random_instance(InstanceSpec(4, 0, seed=s))[2] for s in range(200)}
    assert len(xs) == 16 and len(ys) == 16
