"""Faulty-edge sets, degree conditions and split selection."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from . import cube
from .cube import Edge


class NoDirection(RuntimeError):
    """No split direction satisfies the subcube degree conditions."""


class InstanceParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def fault_bound(n: int) -> int:
    """Largest admissible fault count for Q_n.

    ``4n - 17`` for n >= 5. Below that the 3n - 11 base regime applies at
    n = 4 and only the fault-free cube is covered at n <= 3.
    """
    if n >= 5:
        return 4 * n - 17
    if n == 4:
        return 1
    return 0


class FaultSet:
    """Immutable set of faulty edges of Q_n with a cached degree table."""

    def __init__(self, n: int, edges: Iterable[Edge] = (), *, _degrees=None):
        cube.check_dim(n)
        es = frozenset(edges)
        if _degrees is None:
            for e in es:
                cube.check_vertex(n, e[0])
                cube.check_vertex(n, e[1])
                if cube.edge(*e) != e:
                    raise cube.CubeError(f"{e} is not a canonical edge of Q_{n}")
            deg = [n] * (1 << n)
            for u, v in es:
                deg[u] -= 1
                deg[v] -= 1
            _degrees = tuple(deg)
        self.n = n
        self.edges = es
        self._degrees = _degrees

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self):
        return iter(sorted(self.edges))

    def __contains__(self, e) -> bool:
        return e in self.edges

    def __eq__(self, other) -> bool:
        return isinstance(other, FaultSet) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"FaultSet(n={self.n}, {len(self.edges)} edges)"

    @property
    def degrees(self) -> tuple[int, ...]:
        return self._degrees

    def degree(self, v: int) -> int:
        return self._degrees[v]

    def is_faulty(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edges

    def without(self, edges: Iterable[Edge]) -> FaultSet:
        """Copy with ``edges`` repaired; the degree table is updated in place of a rebuild."""
        drop = [e for e in edges if e in self.edges]
        if not drop:
            return self
        deg = list(self._degrees)
        for u, v in drop:
            deg[u] += 1
            deg[v] += 1
        return FaultSet(self.n, self.edges.difference(drop), _degrees=tuple(deg))

    def with_edges(self, edges: Iterable[Edge]) -> FaultSet:
        return FaultSet(self.n, self.edges.union(edges))

    @cached_property
    def live_masks(self) -> tuple[int, ...]:
        """Per bit position k: set of vertices v (bit k clear) whose k-edge is not faulty."""
        n = self.n
        masks = []
        for k in range(n):
            b = 1 << k
            m = 0
            for v in range(1 << n):
                if not v & b:
                    m |= 1 << v
            for u, v in self.edges:
                if u ^ v == b:
                    m &= ~(1 << u)
            masks.append(m)
        return tuple(masks)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        n = self.n
        out = []
        for v in range(1 << n):
            out.append(tuple(w for w in cube.neighbors(n, v) if not self.is_faulty(v, w)))
        return tuple(out)


@dataclass(frozen=True)
class ConditionReport:
    n: int
    fault_count: int
    bound: int
    min_degree: int
    degree2_count: int
    fault_bound_ok: bool
    admissible: bool

    def problems(self) -> list[str]:
        out = []
        if not self.fault_bound_ok:
            out.append(f"fault bound exceeded: |F| = {self.fault_count} > {self.bound}")
        if self.min_degree < 2:
            out.append(f"minimum degree {self.min_degree} is below 2")
        if self.degree2_count > 1:
            out.append(f"{self.degree2_count} vertices have degree exactly 2 (at most 1 allowed)")
        return out


def check_conditions(n: int, faults: FaultSet) -> ConditionReport:
    if faults.n != n:
        raise ValueError(f"fault set is over Q_{faults.n}, expected Q_{n}")
    deg = faults.degrees
    bound = fault_bound(n)
    md = min(deg)
    d2 = deg.count(2)
    ok = len(faults) <= bound
    return ConditionReport(
        n=n,
        fault_count=len(faults),
        bound=bound,
        min_degree=md,
        degree2_count=d2,
        fault_bound_ok=ok,
        admissible=ok and md >= 2 and d2 <= 1,
    )


@dataclass(frozen=True)
class SplitView:
    """Q_n cut along dimension ``j`` into side 0 and side 1.

    Side ``s`` is the subcube whose coordinate ``j`` equals ``s ^ flip``;
    ``flip`` is set when sides were relabelled so that side 0 carries at
    least as many faults as side 1.
    """

    n: int
    j: int
    F0: FaultSet
    F1: FaultSet
    Fc: frozenset
    flip: int = 0
    rule: str = ""

    @property
    def bit(self) -> int:
        return cube.bit_of(self.n, self.j)

    def side(self, v: int) -> int:
        return (1 if v & self.bit else 0) ^ self.flip

    def faults(self, s: int) -> FaultSet:
        return self.F0 if s == 0 else self.F1

    def down(self, v: int) -> int:
        return cube.project(self.n, v, self.j)[1]

    def up(self, s: int, w: int) -> int:
        return cube.embed(self.n, w, self.j, s ^ self.flip)

    def down_edge(self, e: Edge) -> Edge:
        return cube.edge(self.down(e[0]), self.down(e[1]))

    def up_edge(self, s: int, e: Edge) -> Edge:
        return cube.edge(self.up(s, e[0]), self.up(s, e[1]))

    def across(self, v: int) -> int:
        return v ^ self.bit

    def cross_ok(self, v: int) -> bool:
        return cube.edge(v, v ^ self.bit) not in self.Fc

    def oriented(self) -> SplitView:
        """Relabel sides so that |F0| >= |F1|."""
        if len(self.F0) >= len(self.F1):
            return self
        return SplitView(self.n, self.j, self.F1, self.F0, self.Fc, self.flip ^ 1, self.rule)


def split(n: int, faults: FaultSet, j: int) -> SplitView:
    b = cube.bit_of(n, j)
    sides: tuple[list, list] = ([], [])
    fc = []
    for e in faults.edges:
        u, v = e
        if u ^ v == b:
            fc.append(e)
        else:
            th, pu = cube.project(n, u, j)
            _, pv = cube.project(n, v, j)
            sides[th].append(cube.edge(pu, pv))
    return SplitView(
        n=n, j=j,
        F0=FaultSet(n - 1, sides[0]),
        F1=FaultSet(n - 1, sides[1]),
        Fc=frozenset(fc),
    )


def separating_direction(n: int, e: Edge, f: Edge) -> int:
    """Smallest j putting ``e`` and ``f`` in different (n-1)-subcubes."""
    if n < 2:
        raise ValueError("need n >= 2")
    if set(e) & set(f):
        raise ValueError(f"edges {e} and {f} share a vertex")
    de, df = e[0] ^ e[1], f[0] ^ f[1]
    for j in range(1, n + 1):
        b = cube.bit_of(n, j)
        if b in (de, df):
            continue
        if (e[0] & b) != (f[0] & b):
            return j
    raise NoDirection(f"no direction separates {e} and {f}")


def half_degree_ok(n: int, faults: FaultSet, j: int) -> bool:
    """True when both subcubes of the j-split have min degree >= 2 and at most one degree-2 vertex.

    A vertex loses its crossing edge in the split, so its subcube degree is
    its Q_n - F degree minus one unless that crossing edge was already faulty.
    """
    b = cube.bit_of(n, j)
    deg = faults.degrees
    crossing_faulty = {u for u, v in faults.edges if u ^ v == b}
    crossing_faulty |= {v for u, v in faults.edges if u ^ v == b}
    twos = [0, 0]
    for v in range(1 << n):
        d = deg[v] if v in crossing_faulty else deg[v] - 1
        if d < 2:
            return False
        if d == 2:
            s = 1 if v & b else 0
            twos[s] += 1
            if twos[s] > 1:
                return False
    return True


def _crossing_count(n: int, faults: FaultSet, j: int) -> int:
    b = cube.bit_of(n, j)
    return sum(1 for u, v in faults.edges if u ^ v == b)


def direction_candidates(n: int, faults: FaultSet) -> tuple[str, list[int]]:
    """Directions proposed by the degree-based case analysis, with the rule label."""
    deg = faults.degrees
    delta = min(deg)

    def faulty_dims(v: int) -> set[int]:
        return {cube.dim_of_bit(n, v ^ w) for w in cube.neighbors(n, v) if faults.is_faulty(v, w)}

    threes = [v for v in range(1 << n) if deg[v] == 3]
    if delta >= 3:
        if len(threes) <= 1:
            counts = {j: _crossing_count(n, faults, j) for j in range(1, n + 1)}
            best = max(counts.values())
            return "1.1", sorted(j for j, c in counts.items() if c == best)
        if len(threes) == 2:
            u, v = threes
            return "1.2", sorted(faulty_dims(u) & faulty_dims(v))
        if len(threes) == 3:
            tset = set(threes)
            dims = {cube.dim_of_bit(n, a ^ b) for a, b in faults.edges if a in tset and b in tset}
            return "1.3", sorted(dims)
        return "1.x", []
    if delta == 2:
        twos = [v for v in range(1 << n) if deg[v] == 2]
        w = twos[0]
        if len(threes) == 1:
            v = threes[0]
            dims = faulty_dims(v) & faulty_dims(w)
            if faults.is_faulty(v, w):
                dims.discard(cube.dim_of_bit(n, v ^ w))
            return "2.1", sorted(dims)
        if len(threes) == 2:
            dims = {cube.dim_of_bit(n, w ^ t) for t in threes
                    if (w ^ t).bit_count() == 1 and faults.is_faulty(w, t)}
            return "2.2", sorted(dims)
        if not threes:
            return "2.3", sorted(faulty_dims(w))
        return "2.x", []
    return "inadmissible", []


def direction_ok(n: int, faults: FaultSet, j: int) -> bool:
    return _crossing_count(n, faults, j) >= 1 and half_degree_ok(n, faults, j)


def choose_direction(n: int, faults: FaultSet) -> tuple[int, SplitView]:
    """Pick a split direction keeping both subcubes within the degree conditions.

    The case analysis proposes candidates; each is audited directly and, if
    none passes, every dimension is scanned. The returned view is oriented
    so that side 0 holds at least as many faults as side 1.
    """
    if not faults.edges:
        raise ValueError("choose_direction needs a nonempty fault set")
    rule, cands = direction_candidates(n, faults)
    for j in cands:
        if direction_ok(n, faults, j):
            return j, _labelled(split(n, faults, j), rule).oriented()
    for j in range(1, n + 1):
        if direction_ok(n, faults, j):
            return j, _labelled(split(n, faults, j), rule + "/scan").oriented()
    raise NoDirection(f"no direction of Q_{n} keeps both subcubes within the degree conditions")


def _labelled(view: SplitView, rule: str) -> SplitView:
    return SplitView(view.n, view.j, view.F0, view.F1, view.Fc, view.flip, rule)


# -- instance files ---------------------------------------------------------

def parse_instance(text: str) -> FaultSet:
    n = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            if not line.startswith("n="):
                raise InstanceParseError(lineno, f"expected 'n=<int>', got {line!r}")
            try:
                n = int(line[2:])
                cube.check_dim(n)
            except ValueError as exc:
                raise InstanceParseError(lineno, str(exc)) from None
            continue
        try:
            e = cube.parse_edge(n, line)
        except cube.CubeError as exc:
            raise InstanceParseError(lineno, str(exc)) from None
        if e in edges:
            raise InstanceParseError(lineno, f"duplicate faulty edge {line!r}")
        edges.append(e)
    if n is None:
        raise InstanceParseError(1, "missing 'n=<int>' header")
    return FaultSet(n, edges)


def format_instance(faults: FaultSet) -> str:
    lines = [f"n={faults.n}"]
    lines += [cube.format_edge(faults.n, e) for e in sorted(faults.edges)]
    return "\n".join(lines) + "\n"
