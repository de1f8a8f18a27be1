import random

from hyperlace import cube
from hyperlace.faults import FaultSet
from hyperlace.oracle import exhaustive_spanning_k
from hyperlace.paths import verify_spanning_k_path
from hyperlace.search import find_paths, required_imbalance


def test_required_imbalance():
    assert required_imbalance([(0, 3)]) == 1
    assert required_imbalance([(1, 2)]) == -1
    assert required_imbalance([(0, 1)]) == 0


def test_unbalanced_is_absent():
    assert find_paths(FaultSet(3), [(0, 3)]).status == "absent"


def test_agrees_with_oracle_on_random_systems():
    rng = random.Random(11)
    for _ in range(400):
        n = rng.choice([3, 4])
        k = rng.choice([1, 2, 3])
        F = FaultSet(n, rng.sample(list(cube.all_edges(n)), rng.randrange(0, 2 * n)))
        vs = rng.sample(range(1 << n), 2 * k)
        pairs = [(vs[2 * i], vs[2 * i + 1]) for i in range(k)]
        got = find_paths(F, pairs)
        assert got.found == exhaustive_spanning_k(n, F, pairs).found
        if got.found:
            assert verify_spanning_k_path(n, F, pairs, got.paths).ok


def test_node_limit_reports_budget():
    F = FaultSet(6)
    r = find_paths(F, [(0, 3)], node_limit=5)
    assert r.status == "absent"  # parity rules it out before any search
    r = find_paths(F, [(0, 1), (6, 7), (10, 11)], node_limit=3)
    assert r.status in ("budget", "found")
