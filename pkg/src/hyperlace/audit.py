"""Seeded trials, instance enumeration and engine/oracle agreement checks.

Shared by the CLI commands and the acceptance tests so both exercise the
same instance streams.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass

from . import cube
from .engine import ham_path_laceable
from .errors import ConstructionFailed, Inadmissible
from .faults import FaultSet, check_conditions, fault_bound
from .oracle import InstanceSpec, exhaustive_ham_path, random_instance
from .paths import verify_hamiltonian_path


def trial_seed(seed: int, n: int, t: int) -> int:
    """Per-trial seed; stable across runs and independent of scheduling."""
    return (seed * 1_000_003 + n) * 1_000_003 + t


def trial_fault_count(n: int, t: int, tseed: int, mode: str = "mixed") -> int:
    """Fault count for trial ``t``: the bound, or uniform in [1, bound], or alternating."""
    bound = fault_bound(n)
    if bound == 0 or mode == "max" or (mode == "mixed" and t % 2 == 0):
        return bound
    return random.Random(tseed).randint(1, bound)


@dataclass
class TrialResult:
    n: int
    seed: int
    fault_count: int
    status: str  # "ok" | "inadmissible" | "failed"
    seconds: float
    detail: str = ""
    path: list[int] | None = None
    admissible: bool = True

    def repro(self) -> str:
        extra = "" if self.admissible else " --any"
        return f"hyperlace gen --n {self.n} --faults {self.fault_count} --seed {self.seed}{extra}"


def run_trial(n: int, fault_count: int, seed: int, admissible: bool = True) -> TrialResult:
    """Generate one instance, solve it and verify the result."""
    F, x, y = random_instance(InstanceSpec(n, fault_count, seed=seed, admissible=admissible))
    t0 = time.perf_counter()

    def result(status, detail="", path=None):
        return TrialResult(n, seed, fault_count, status, time.perf_counter() - t0, detail, path, admissible)

    try:
        path, _ = ham_path_laceable(n, F, x, y)
    except Inadmissible as exc:
        return result("inadmissible", str(exc))
    except ConstructionFailed as exc:
        return result("failed", str(exc))
    out = result("ok", path=path)
    rep = verify_hamiltonian_path(n, F, x, y, path)
    if not rep.ok:
        out.status, out.detail, out.path = "failed", "; ".join(rep.problems), None
    return out


# -- enumeration --------------------------------------------------------------

def enumerate_instances(n: int, max_faults: int, reduce: bool = True):
    """All admissible (F, x, y) with |F| <= max_faults.

    With ``reduce`` the endpoints are restricted to x = 0 and one y per odd
    weight (y = 0...01...1). Every instance maps to one of these under a cube
    automorphism (translate x to 0, then permute coordinates), and both
    admissibility and existence of a Hamiltonian path are invariant under
    automorphisms, so nothing is lost for an existence check.
    """
    edges = list(cube.all_edges(n))
    if reduce:
        ends = [(0, (1 << w) - 1) for w in range(1, n + 1, 2)]
    else:
        ends = [(x, y) for x in range(1 << n) for y in range(x + 1, 1 << n)
                if cube.parity(x) != cube.parity(y)]
    for k in range(max_faults + 1):
        for combo in itertools.combinations(edges, k):
            F = FaultSet(n, combo)
            if combo and not check_conditions(n, F).admissible:
                continue
            for x, y in ends:
                yield F, x, y


@dataclass
class Agreement:
    engine_ok: bool
    oracle_status: str
    problem: str = ""

    @property
    def agrees(self) -> bool:
        return not self.problem


def compare(n: int, F: FaultSet, x: int, y: int) -> Agreement:
    """Run engine and exhaustive oracle on one instance and cross-check."""
    try:
        path, _ = ham_path_laceable(n, F, x, y)
        engine_ok = verify_hamiltonian_path(n, F, x, y, path).ok
    except ConstructionFailed:
        engine_ok = False
    res = exhaustive_ham_path(n, F, x, y)
    problem = ""
    if res.found and not verify_hamiltonian_path(n, F, x, y, res.path).ok:
        problem = "oracle returned an invalid path"
    elif engine_ok != res.found:
        problem = f"engine {'found' if engine_ok else 'failed'}, oracle {res.status}"
    elif not res.found:
        problem = "oracle proved absence on an admissible instance"
    return Agreement(engine_ok, res.status, problem)
