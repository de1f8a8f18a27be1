"""Independent ground truth: exhaustive path search and random instances.

Nothing here reuses the engine's search module. The search keeps an explicit
count of unvisited live neighbours per vertex, extends toward the neighbour
with the fewest remaining options (ties by label), and prunes on those
counts and on reachability of the unvisited part.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Sequence

from . import cube
from .faults import FaultSet, check_conditions, fault_bound

EXHAUSTIVE_MAX_DIM = 6


class BudgetExhausted(RuntimeError):
    pass


class Unsatisfiable(ValueError):
    pass


@dataclass(frozen=True)
class SearchBudget:
    node_limit: int | None = None
    time_limit: float | None = None
    exhaustive: bool = True


@dataclass
class OracleResult:
    status: str  # "found" | "absent"
    paths: list[list[int]] | None
    nodes: int

    @property
    def found(self) -> bool:
        return self.status == "found"

    @property
    def path(self) -> list[int] | None:
        return self.paths[0] if self.paths else None


class _Stop(Exception):
    pass


def exhaustive_ham_path(n: int, faults: FaultSet | None, x: int, y: int,
                        budget: SearchBudget = SearchBudget()) -> OracleResult:
    """Hamiltonian x-y path in Q_n - F, or a proof by exhaustion that none exists."""
    return exhaustive_spanning_k(n, faults, [(x, y)], budget)


def exhaustive_spanning_k(n: int, faults: FaultSet | None, pairs: Sequence[tuple[int, int]],
                          budget: SearchBudget = SearchBudget()) -> OracleResult:
    """Vertex-disjoint a_i-b_i paths covering Q_n - F.

    In exhaustive mode (n <= 6) the answer is definitive. In budgeted mode
    running out of nodes or time raises :class:`BudgetExhausted`; absence is
    still reported only when the whole tree was explored.
    """
    if budget.exhaustive and n > EXHAUSTIVE_MAX_DIM:
        raise ValueError(f"exhaustive search is limited to n <= {EXHAUSTIVE_MAX_DIM}")
    if faults is None:
        faults = FaultSet(n)
    size = 1 << n
    ends = [v for p in pairs for v in p]
    if len(set(ends)) != len(ends):
        return OracleResult("absent", None, 0)
    white = sum(1 for v in ends if cube.parity(v) == 0)
    if 2 * white != len(ends):
        return OracleResult("absent", None, 0)
    if size == 2 and len(pairs) == 1:
        a, b = pairs[0]
        ok = not faults.is_faulty(a, b)
        return OracleResult("found" if ok else "absent", [[a, b]] if ok else None, 1)

    adj = [[w for w in cube.neighbors(n, v) if not faults.is_faulty(v, w)] for v in range(size)]
    visited = [False] * size
    free = [len(a) for a in adj]  # live neighbours not yet visited
    is_end = [False] * size
    for v in ends:
        is_end[v] = True
    k = len(pairs)
    node_limit = None if budget.exhaustive else budget.node_limit
    deadline = None
    if not budget.exhaustive and budget.time_limit is not None:
        deadline = time.monotonic() + budget.time_limit
    nodes = 0
    remaining = size

    def visit(v: int) -> None:
        nonlocal remaining
        visited[v] = True
        remaining -= 1
        for w in adj[v]:
            free[w] -= 1

    def unvisit(v: int) -> None:
        nonlocal remaining
        visited[v] = False
        remaining += 1
        for w in adj[v]:
            free[w] += 1

    def reachable(head: int, i: int) -> bool:
        # every unvisited vertex must be reachable from the head or from a later start
        later = [pairs[j][0] for j in range(i + 1, k)]
        seen = {head, *later}
        stack = [head, *later]
        count = len(later)
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if not visited[w] and w not in seen:
                    seen.add(w)
                    stack.append(w)
                    count += 1
        return count == remaining and pairs[i][1] in seen

    trails: list[list[int]] = [[] for _ in range(k)]

    def step(i: int, head: int) -> bool:
        nonlocal nodes
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise _Stop
        if deadline is not None and nodes % 1024 == 0 and time.monotonic() > deadline:
            raise _Stop
        target = pairs[i][1]
        if head == target:
            if i + 1 == k:
                return remaining == 0
            a = pairs[i + 1][0]
            visit(a)
            trails[i + 1].append(a)
            if step(i + 1, a):
                return True
            trails[i + 1].pop()
            unvisit(a)
            return False
        if not reachable(head, i):
            return False
        forced = None
        options = []
        for w in adj[head]:
            if visited[w]:
                continue
            if is_end[w] and w != target:
                continue
            options.append(w)
            if w != target and not is_end[w] and free[w] <= 1:
                # w has no way out other than through the head
                if forced is not None:
                    return False
                forced = w
        if forced is not None:
            options = [forced]
        else:
            options.sort(key=lambda w: (free[w], w))
        for w in options:
            visit(w)
            if _dead_end(head, w, target):
                unvisit(w)
                continue
            trails[i].append(w)
            if step(i, w):
                return True
            trails[i].pop()
            unvisit(w)
        return False

    def _dead_end(old: int, new: int, target: int) -> bool:
        # neighbours of the old head just lost it as an exit
        for z in adj[old]:
            if visited[z] or z == new:
                continue
            need = 1 if is_end[z] else 2
            if free[z] < need:
                return True
        if new != target and free[target] == 0 and target not in adj[new]:
            return True
        return False

    a0 = pairs[0][0]
    visit(a0)
    trails[0].append(a0)
    try:
        ok = step(0, a0)
    except _Stop:
        raise BudgetExhausted(f"search budget exhausted after {nodes} nodes") from None
    if ok:
        return OracleResult("found", [list(t) for t in trails], nodes)
    return OracleResult("absent", None, nodes)


# -- instance generation ----------------------------------------------------

@dataclass(frozen=True)
class InstanceSpec:
    """What to generate.

    ``admissible`` requests instances passing every condition of the main
    theorem. With it off, fault sets are drawn without filtering.
    """

    n: int
    fault_count: int
    seed: int = 0
    admissible: bool = True
    max_tries: int = 10_000


def random_instance(spec: InstanceSpec) -> tuple[FaultSet, int, int]:
    """Seeded random (F, x, y) with opposite-parity, distinct endpoints."""
    n = spec.n
    cube.check_dim(n)
    total = n << (n - 1)
    if spec.fault_count < 0 or spec.fault_count > total:
        raise Unsatisfiable(f"cannot pick {spec.fault_count} of {total} edges")
    if spec.admissible and spec.fault_count > fault_bound(n) and spec.fault_count > 0:
        raise Unsatisfiable(f"fault bound exceeded: {spec.fault_count} > {fault_bound(n)} at n={n}")
    if n < 1:
        raise Unsatisfiable("need n >= 1 for two endpoints")
    rng = random.Random(spec.seed)
    edges = list(cube.all_edges(n))
    for _ in range(spec.max_tries):
        F = FaultSet(n, rng.sample(edges, spec.fault_count))
        if not spec.admissible or not F.edges or check_conditions(n, F).admissible:
            break
    else:
        raise Unsatisfiable(f"no admissible fault set found in {spec.max_tries} draws")
    x = rng.randrange(1 << n)
    y = rng.randrange(1 << (n - 1))
    # spread y over the vertices of the other parity
    y = _nth_of_parity(n, 1 - cube.parity(x), y)
    return F, x, y


def _nth_of_parity(n: int, p: int, i: int) -> int:
    # the vertices of parity p are exactly (i << 1) | b with b fixing the parity
    v = i << 1
    if cube.parity(v) != p:
        v |= 1
    return v
