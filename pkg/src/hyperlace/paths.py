"""Paths, spanning path systems, verification and splicing."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import cube
from .cube import Edge
from .faults import FaultSet

Path = list[int]


class SpliceError(ValueError):
    pass


class NoEdge(LookupError):
    """No path edge satisfies the selection constraints."""


@dataclass
class Report:
    ok: bool = True
    problems: list[str] = field(default_factory=list)

    def fail(self, msg: str) -> None:
        self.ok = False
        self.problems.append(msg)

    def __bool__(self) -> bool:
        return self.ok


def path_edges(path: Sequence[int]) -> list[Edge]:
    return [cube.edge(a, b) for a, b in zip(path, path[1:])]


def is_balanced(pairs: Iterable[tuple[int, int]]) -> bool:
    colors = Counter(cube.parity(v) for p in pairs for v in p)
    return colors[0] == colors[1]


def _check_walk(n: int, faults, path: Sequence[int], report: Report, label: str = "") -> None:
    tag = f"{label}: " if label else ""
    for v in path:
        if not 0 <= v < (1 << n):
            report.fail(f"{tag}vertex {v} is not in Q_{n}")
            return
    for a, b in zip(path, path[1:]):
        if (a ^ b).bit_count() != 1:
            report.fail(f"{tag}consecutive vertices {cube.format_vertex(n, a)} {cube.format_vertex(n, b)} not adjacent")
        elif faults is not None and faults.is_faulty(a, b):
            report.fail(f"{tag}uses faulty edge {cube.format_vertex(n, a)} {cube.format_vertex(n, b)}")
    seen = Counter(path)
    rep = [v for v, c in seen.items() if c > 1]
    if rep:
        report.fail(f"{tag}vertex repeated: {cube.format_vertex(n, rep[0])}")


def verify_hamiltonian_path(n: int, faults: FaultSet | None, x: int, y: int, path: Sequence[int]) -> Report:
    report = Report()
    if not path:
        report.fail("empty path")
        return report
    if path[0] != x:
        report.fail("does not start at x")
    if path[-1] != y:
        report.fail("does not end at y")
    _check_walk(n, faults, path, report)
    if len(set(path)) != 1 << n:
        report.fail(f"not spanning: visits {len(set(path))} of {1 << n} vertices")
    return report


def verify_spanning_k_path(
    n: int,
    faults: FaultSet | None,
    pairs: Sequence[tuple[int, int]],
    paths: Sequence[Sequence[int]],
    blocked: Iterable[int] = (),
) -> Report:
    """Check that ``paths`` realise ``pairs`` disjointly and cover Q_n minus ``blocked``."""
    report = Report()
    blocked = set(blocked)
    if len(paths) != len(pairs):
        report.fail(f"expected {len(pairs)} paths, got {len(paths)}")
        return report
    owner: dict[int, int] = {}
    for i, (p, (a, b)) in enumerate(zip(paths, pairs)):
        if not p:
            report.fail(f"path {i}: empty")
            continue
        if {p[0], p[-1]} != {a, b} or (len(p) == 1) != (a == b):
            report.fail(f"path {i}: wrong endpoints")
        _check_walk(n, faults, p, report, f"path {i}")
        for v in p:
            if v in owner and owner[v] != i:
                report.fail(f"not disjoint: paths {owner[v]} and {i} share {cube.format_vertex(n, v)}")
            owner[v] = i
            if v in blocked:
                report.fail(f"path {i}: visits blocked vertex {cube.format_vertex(n, v)}")
    need = (1 << n) - len(blocked)
    if report.ok and len(owner) != need:
        report.fail(f"not spanning: covers {len(owner)} of {need} vertices")
    return report


def orient(paths: Sequence[Sequence[int]], pairs: Sequence[tuple[int, int]]) -> list[Path]:
    """Return each path running from a_i to b_i."""
    out = []
    for p, (a, _) in zip(paths, pairs):
        p = list(p)
        out.append(p if p[0] == a else p[::-1])
    return out


# -- splicing ---------------------------------------------------------------

def rewire(
    paths: Iterable[Sequence[int]],
    remove: Iterable[Edge],
    add: Iterable[Edge],
    start: int,
    end: int,
) -> Path:
    """Union the edges of ``paths`` and ``add``, drop ``remove``, and read off the start-end path.

    Every splice in the constructions is an instance of this edge-set rewrite;
    the result is rejected unless it is a single simple path through every
    vertex of the inputs.
    """
    return _join(paths, [cube.edge(*e) for e in remove], [cube.edge(*e) for e in add], start, end)


def joins_up(
    paths: Iterable[Sequence[int]],
    remove: Iterable[Edge],
    links: Iterable[tuple[int, int]],
    start: int,
    end: int,
) -> bool:
    """Dry run of :func:`rewire` where ``links`` may stand for not-yet-built paths."""
    try:
        _join(paths, [cube.edge(*e) for e in remove], [tuple(sorted(e)) for e in links], start, end)
    except SpliceError:
        return False
    return True


def _join(paths, remove, add, start, end) -> Path:
    verts: set[int] = set()
    multi: Counter = Counter()
    for p in paths:
        verts.update(p)
        multi.update(path_edges(p))
    for e in remove:
        if multi[e] == 0:
            raise SpliceError(f"edge {e} to remove is not on the paths")
        multi[e] -= 1
    for e in add:
        verts.update(e)
        multi[e] += 1
    adj: dict[int, list[int]] = {v: [] for v in verts}
    for (a, b), c in multi.items():
        if c > 1:
            raise SpliceError(f"edge {(a, b)} used twice")
        if c == 1:
            adj[a].append(b)
            adj[b].append(a)
    if start == end:
        if len(verts) == 1:
            return [start]
        raise SpliceError("start equals end")
    for v, nb in adj.items():
        want = 1 if v in (start, end) else 2
        if len(nb) != want:
            raise SpliceError(f"vertex {v} has degree {len(nb)} in the rewired graph, expected {want}")
    out = [start]
    prev, cur = None, start
    while cur != end:
        nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][-1]
        if nxt == prev:
            raise SpliceError("walk stalled")
        prev, cur = cur, nxt
        out.append(cur)
        if len(out) > len(verts):
            raise SpliceError("cycle in rewired graph")
    if len(out) != len(verts):
        raise SpliceError(f"rewired graph is not one path: covers {len(out)} of {len(verts)} vertices")
    return out


def splice_cross(p0: Sequence[int], p1: Sequence[int], drop: Edge, cross: tuple[Edge, Edge]) -> Path:
    """Replace ``drop = u0v0`` on ``p0`` by ``u0 -> u1 ~p1~ v1 -> v0``.

    ``cross`` holds the two edges joining the ends of ``drop`` to the ends of ``p1``.
    """
    drop = cube.edge(*drop)
    if drop not in path_edges(p0):
        raise SpliceError("dropped edge is not on the base path")
    if len(set(p0) & set(p1)):
        raise SpliceError("paths overlap")
    ends1 = {p1[0], p1[-1]}
    touched0, touched1 = set(), set()
    for e in cross:
        a, b = e
        if a in drop and b in ends1:
            touched0.add(a)
            touched1.add(b)
        elif b in drop and a in ends1:
            touched0.add(b)
            touched1.add(a)
        else:
            raise SpliceError(f"crossing edge {e} does not join the dropped edge to the inserted path")
    if touched0 != set(drop) or touched1 != ends1:
        raise SpliceError("crossing edges do not match endpoints")
    for e in cross:
        cube.edge(*e)
    return rewire([p0, p1], [drop], cross, p0[0], p0[-1])


def splice_detour(
    p0: Sequence[int],
    p1: Sequence[int],
    u0: int, v0: int, u0p: int, v0p: int,
    bit: int,
    faults: FaultSet | None = None,
) -> Path:
    """Detour splice used when the crossing edge at ``u0`` is unavailable.

    Drops ``u0v0`` and ``u0'v0'`` from ``p0``, adds the cube edge ``u0u0'``
    and the crossings ``v0v1``, ``v0'v0'_1``; ``p1`` must join ``v1`` and ``v1'``.
    """
    e0, e1 = cube.edge(u0, v0), cube.edge(u0p, v0p)
    on = set(path_edges(p0))
    if e0 not in on or e1 not in on:
        raise SpliceError("detour edges are not on the base path")
    link = cube.edge(u0, u0p)
    if faults is not None and faults.is_faulty(u0, u0p):
        raise SpliceError("detour link u0u0' is faulty")
    v1, v1p = v0 ^ bit, v0p ^ bit
    if {p1[0], p1[-1]} != {v1, v1p}:
        raise SpliceError("inserted path does not join v1 and v1'")
    return rewire([p0, p1], [e0, e1], [link, cube.edge(v0, v1), cube.edge(v0p, v1p)], p0[0], p0[-1])


def select_path_edge(
    path: Sequence[int],
    bit: int,
    forbidden_cross: Iterable[Edge] = (),
    avoid_vertices: Iterable[int] = (),
    must_contain: Iterable[Edge] = (),
    exclude: Iterable[Edge] = (),
) -> Edge:
    """Pick an edge of ``path`` suitable for absorbing the other subcube.

    An edge from ``must_contain`` lying on the path wins. Otherwise the first
    edge (from the path's start) whose endpoints avoid ``avoid_vertices`` and
    whose crossing edges along ``bit`` avoid ``forbidden_cross``.
    """
    edges = path_edges(path)
    on = set(edges)
    for e in must_contain:
        e = cube.edge(*e)
        if e in on:
            return e
    forb = {cube.edge(*e) for e in forbidden_cross}
    avoid = set(avoid_vertices)
    skip = {cube.edge(*e) for e in exclude}
    for e in edges:
        a, b = e
        if e in skip or a in avoid or b in avoid:
            continue
        if cube.edge(a, a ^ bit) in forb or cube.edge(b, b ^ bit) in forb:
            continue
        return e
    raise NoEdge("no path edge satisfies the constraints")


def select_disjoint_edges(
    path: Sequence[int],
    count: int,
    bit: int,
    forbidden_cross: Iterable[Edge] = (),
    avoid_vertices: Iterable[int] = (),
    chosen: Sequence[Edge] = (),
) -> list[Edge]:
    """Extend ``chosen`` greedily to ``count`` pairwise vertex-disjoint path edges."""
    out = [cube.edge(*e) for e in chosen]
    avoid = set(avoid_vertices) | cube.edges_touching(out)
    forb = list(forbidden_cross)
    while len(out) < count:
        e = select_path_edge(path, bit, forb, avoid)
        out.append(e)
        avoid.update(e)
    return out


# -- text forms -------------------------------------------------------------

def format_path(n: int, path: Sequence[int]) -> str:
    return "\n".join(cube.format_vertex(n, v) for v in path) + "\n"


def format_system(n: int, paths: Sequence[Sequence[int]]) -> str:
    return "\n".join(format_path(n, p) for p in paths)


def parse_system(n: int, text: str) -> list[Path]:
    out: list[Path] = []
    cur: Path = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            if cur:
                out.append(cur)
                cur = []
            continue
        try:
            cur.append(cube.parse_vertex(n, line))
        except cube.CubeError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if cur:
        out.append(cur)
    return out


def parse_path(n: int, text: str) -> Path:
    system = parse_system(n, text)
    if len(system) != 1:
        raise ValueError(f"expected one path, found {len(system)}")
    return system[0]
