"""Recursive Hamiltonian path construction in Q_n - F for |F| <= 4n - 17.

For n >= 7 the cube is split along a direction that keeps both halves within
the degree conditions. Side 0 carries the larger share F_0 of the faults and
the construction branches on how far |F_0| exceeds the inductive bound
4(n-1) - 17:

* case 1 (no excess): both halves are solved recursively and joined by one
  or two crossing edges;
* cases 2-4 (excess 1-3): that many disjoint faulty edges R are set aside in
  side 0, side 0 is solved recursively as if they were healthy, and every
  R edge the resulting path uses is cut and rerouted through side 1, which
  is covered by a spanning path system.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Iterator

from . import cube, settings
from .construct import _havel, _lift, spanning_paths, split_route
from .cube import Edge
from .errors import ConstructionFailed, Inadmissible, NotFound, SameParity
from .faults import (
    FaultSet,
    NoDirection,
    SplitView,
    check_conditions,
    choose_direction,
    direction_ok,
    split,
)
from .paths import (
    NoEdge,
    Path,
    SpliceError,
    joins_up,
    path_edges,
    rewire,
    select_path_edge,
    splice_cross,
    verify_hamiltonian_path,
)
from .search import find_paths

BASE_DIM = 6
MAX_RESERVE_TRIES = 8
MAX_ANCHOR_TRIES = 4
BASE_NODE_BUDGET = 20_000


def inductive_bound(n: int) -> int:
    return 4 * n - 17


@dataclass
class TraceEntry:
    depth: int
    n: int
    kind: str  # "fault-free" | "base" | "split"
    j: int | None = None
    rule: str = ""
    case: int | None = None
    subcase: str = ""
    f0: int = 0
    f1: int = 0
    fc: int = 0
    reserved: list[Edge] = field(default_factory=list)
    selected: list[Edge] = field(default_factory=list)
    calls: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def line(self, n_top: int | None = None) -> str:
        head = f"{'  ' * self.depth}n={self.n} {self.kind}"
        if self.kind != "split":
            return head
        parts = [head, f"j={self.j}", f"rule={self.rule}", f"case={self.case}", f"subcase={self.subcase}",
                 f"|F0|={self.f0} |F1|={self.f1} |Fc|={self.fc}"]
        if self.reserved:
            parts.append("R=" + ",".join(cube.format_edge(self.n, e) for e in self.reserved))
        if self.selected:
            parts.append("cut=" + ",".join(cube.format_edge(self.n, e) for e in self.selected))
        if self.calls:
            parts.append("calls=" + ",".join(self.calls))
        if self.notes:
            parts.append("notes=" + ";".join(self.notes))
        return " ".join(parts)


@dataclass
class SolveTrace:
    entries: list[TraceEntry] = field(default_factory=list)

    def add(self, entry: TraceEntry) -> TraceEntry:
        self.entries.append(entry)
        return entry

    def splits(self) -> list[TraceEntry]:
        return [e for e in self.entries if e.kind == "split"]

    def render(self) -> str:
        return "\n".join(e.line() for e in self.entries)


def classify(n: int, f0: int) -> int:
    """Case number from |F_0| measured against the inductive bound of the half."""
    excess = f0 - inductive_bound(n - 1)
    return 1 if excess <= 0 else excess + 1


def base_solve(n: int, faults: FaultSet, x: int, y: int) -> Path:
    """Exact solver for n <= 6, where 4n - 17 <= 3n - 11.

    Backtracking is fast on almost every instance but occasionally stalls on
    a long tail. A short budgeted search runs first, then one split into two
    half-cubes, and only then the unbounded search, so the answer stays exact.
    """
    if n > BASE_DIM:
        raise ValueError(f"base_solve handles n <= {BASE_DIM}")
    r = find_paths(faults, [(x, y)], node_limit=BASE_NODE_BUDGET)
    if r.status == "budget":
        got = split_route(faults, [(x, y)]) if n > 2 else None
        if got is not None:
            return got[0]
        r = find_paths(faults, [(x, y)])
    if not r.found:
        raise NotFound(f"no Hamiltonian path in Q_{n} - F between the given endpoints")
    return r.paths[0]


def ham_path_laceable(n: int, faults: FaultSet, x: int, y: int) -> tuple[Path, SolveTrace]:
    """Hamiltonian path x -> y in Q_n - F.

    Raises :class:`Inadmissible` when F breaks the bound or degree
    conditions, :class:`SameParity` for equal-parity endpoints and
    :class:`ConstructionFailed` (with the trace) if the construction
    cannot complete.
    """
    if faults.n != n:
        raise ValueError(f"fault set is over Q_{faults.n}, expected Q_{n}")
    cube.check_vertex(n, x)
    cube.check_vertex(n, y)
    if cube.parity(x) == cube.parity(y):
        raise SameParity(f"{cube.format_vertex(n, x)} and {cube.format_vertex(n, y)} have equal parity")
    if faults.edges:
        report = check_conditions(n, faults)
        if not report.admissible:
            raise Inadmissible(report)
    trace = SolveTrace()
    try:
        path = _solve(faults, x, y, trace, 0)
    except (NotFound, SpliceError, NoEdge, NoDirection) as exc:
        raise ConstructionFailed(f"construction failed: {exc}", trace) from exc
    report = verify_hamiltonian_path(n, faults, x, y, path)
    if not report.ok:
        raise ConstructionFailed("constructed path failed verification: " + "; ".join(report.problems), trace)
    return path, trace


def solve_path(faults: FaultSet, x: int, y: int) -> Path:
    """Untraced entry point for callers that already checked admissibility."""
    return _solve(faults, x, y, None, 0)


def _solve(F: FaultSet, x: int, y: int, trace: SolveTrace | None, depth: int) -> Path:
    n = F.n
    if not F.edges:
        if trace is not None:
            trace.add(TraceEntry(depth, n, "fault-free"))
        return _havel([1 << k for k in range(n)], x, y)
    if n <= BASE_DIM:
        if trace is not None:
            trace.add(TraceEntry(depth, n, "base"))
        return base_solve(n, F, x, y)

    j, view = choose_direction(n, F)
    assert len(view.Fc) >= 1, "direction without a crossing fault"
    entry = TraceEntry(depth, n, "split", j=j, rule=view.rule)
    case = classify(n, len(view.F0))
    if case == 4:
        view2 = _case4_resplit(F, view)
        if view2 is not None:
            entry.notes.append(f"case 4 re-split j={view.j}->{view2.j}")
            view = view2
            entry.j = view.j
            entry.rule = view.rule
            case = classify(n, len(view.F0))
    entry.case = case
    entry.f0, entry.f1, entry.fc = len(view.F0), len(view.F1), len(view.Fc)
    _check_case_label(n, entry)
    if trace is not None:
        trace.add(entry)
    if case == 1:
        path = _case1(view, x, y, trace, depth, entry)
    else:
        path = _reserved_case(view, case, x, y, trace, depth, entry)
    if settings.VERIFY_STEPS:
        rep = verify_hamiltonian_path(n, F, x, y, path)
        assert rep.ok, f"level n={n} case {entry.subcase}: {rep.problems}"
    return path


def _check_case_label(n: int, e: TraceEntry) -> None:
    lim = {1: (None, 4 * n - 21), 2: (4 * n - 20, 4 * n - 20), 3: (4 * n - 19, 4 * n - 19), 4: (4 * n - 18, 4 * n - 18)}
    lo, hi = lim[e.case]
    assert (lo is None or e.f0 >= lo) and e.f0 <= hi, f"case {e.case} with |F0|={e.f0} at n={n}"
    assert e.f1 <= e.f0


def _case4_resplit(F: FaultSet, view: SplitView) -> SplitView | None:
    """Look for a direction k with uu_k, t0t_k in F for a degree-4 vertex u."""
    n = F.n
    (t_edge,) = view.Fc
    t0 = t_edge[0] if view.side(t_edge[0]) == 0 else t_edge[1]
    deg = F.degrees
    t_dims = {cube.dim_of_bit(n, t0 ^ w) for w in cube.neighbors(n, t0) if F.is_faulty(t0, w)}
    for u in range(1 << n):
        if u == t0 or deg[u] != 4:
            continue
        for w in cube.neighbors(n, u):
            if not F.is_faulty(u, w):
                continue
            k = cube.dim_of_bit(n, u ^ w)
            if k == view.j or k not in t_dims:
                continue
            if not direction_ok(n, F, k):
                continue
            v2 = split(n, F, k).oriented()
            if len(v2.F0) <= 4 * n - 19:
                return replace(v2, rule=view.rule + "/4-resplit")
    return None


# -- helpers ----------------------------------------------------------------

def _sub(view: SplitView, s: int, faults: FaultSet, a: int, b: int,
         trace: SolveTrace | None, depth: int) -> Path:
    """Hamiltonian path a -> b of side ``s`` minus ``faults`` (given in side coordinates)."""
    m = view.n - 1
    if faults.edges:
        assert len(faults) <= max(inductive_bound(m), 0) or m <= BASE_DIM, "recursive bound exceeded"
        rep = check_conditions(m, faults)
        assert rep.admissible, f"recursive instance inadmissible: {rep.problems()}"
    p = _solve(faults, view.down(a), view.down(b), trace, depth + 1)
    return _lift(view, s, p)


def _first_bridge(view: SplitView, x: int, avoid: set[int]) -> Iterator[int]:
    sx = view.side(x)
    px = cube.parity(x)
    bit = view.bit
    for r in range(1 << view.n):
        if view.side(r) != sx or cube.parity(r) == px or r in avoid or (r ^ bit) in avoid:
            continue
        if view.cross_ok(r):
            yield r


# -- case 1 -----------------------------------------------------------------

def _case1(view: SplitView, x: int, y: int, trace, depth, entry: TraceEntry) -> Path:
    bit = view.bit
    sx, sy = view.side(x), view.side(y)
    if sx == sy:
        entry.subcase = "1.1"
        s, t = sx, 1 - sx
        p = _sub(view, s, view.faults(s), x, y, trace, depth)
        e = select_path_edge(p, bit, forbidden_cross=view.Fc)
        entry.selected.append(e)
        a, b = e
        q = _sub(view, t, view.faults(t), a ^ bit, b ^ bit, trace, depth)
        return splice_cross(p, q, e, (cube.edge(a, a ^ bit), cube.edge(b, b ^ bit)))
    entry.subcase = "1.2"
    r = next(_first_bridge(view, x, {y}))
    entry.calls.append(f"bridge {cube.format_vertex(view.n, r)}")
    return _sub(view, sx, view.faults(sx), x, r, trace, depth) + \
        _sub(view, sy, view.faults(sy), r ^ bit, y, trace, depth)


# -- cases 2-4 --------------------------------------------------------------

@dataclass
class _Plan:
    remove: list[Edge]
    add: list[Edge]
    links: list[tuple[int, int]]  # side-1 endpoint pairs, full coordinates
    cut: list[Edge]
    detours: int = 0


def _reserve_candidates(view: SplitView, m: int, avoid: set[int], t0: int | None) -> Iterator[tuple[Edge, ...]]:
    """Sets of ``m`` disjoint side-0 faulty edges, preferred ones first.

    Preference: not adjacent to F_c, clear of ``avoid`` and of t0.
    """
    f0 = [view.up_edge(0, e) for e in sorted(view.F0.edges)]
    fc_touch = {v for e in view.Fc for v in e}
    bit = view.bit

    def penalty(e: Edge) -> tuple:
        adj = any((v ^ bit) in fc_touch for v in e)
        hits = any(v in avoid or (v ^ bit) in avoid for v in e)
        return (hits, t0 in e, adj, e)

    f0.sort(key=penalty)
    for combo in itertools.combinations(f0, m):
        verts = [v for e in combo for v in e]
        if len(set(verts)) == len(verts):
            yield combo


def _break_options(view: SplitView, p0: Path, e: Edge, used: set[int], reserved: set[Edge]):
    """Ways to cut path edge ``e`` and reconnect it through side 1.

    Yields (remove, add, link) where ``link`` is the side-1 pair to be joined.
    """
    bit = view.bit
    a, b = e
    ca, cb = view.cross_ok(a), view.cross_ok(b)
    if ca and cb and (a ^ bit) not in used and (b ^ bit) not in used:
        yield [e], [cube.edge(a, a ^ bit), cube.edge(b, b ^ bit)], (a ^ bit, b ^ bit)
    # detour: the end with a faulty crossing is rejoined to the path through a cube edge u0u0'
    pos = {v: i for i, v in enumerate(p0)}
    for u0, v0 in ((a, b), (b, a)):
        if not view.cross_ok(v0) or (v0 ^ bit) in used:
            continue
        for u0p in cube.neighbors(view.n, u0):
            if u0p == v0 or (u0p ^ u0) == bit or u0p not in pos:
                continue
            if view.F0.is_faulty(view.down(u0), view.down(u0p)):
                continue
            i = pos[u0p]
            for k in (i - 1, i + 1):
                if not 0 <= k < len(p0):
                    continue
                v0p = p0[k]
                if v0p in e or cube.edge(u0p, v0p) in reserved:
                    continue
                if not view.cross_ok(v0p) or (v0p ^ bit) in used or v0p ^ bit == v0 ^ bit:
                    continue
                yield ([e, cube.edge(u0p, v0p)],
                       [cube.edge(u0, u0p), cube.edge(v0, v0 ^ bit), cube.edge(v0p, v0p ^ bit)],
                       (v0 ^ bit, v0p ^ bit))


def _plans(view: SplitView, p0: Path, cuts: list[Edge], base: _Plan, reserved: set[Edge],
           start: int, end: int, limit: int = 12) -> Iterator[_Plan]:
    """Combine break options for every edge in ``cuts`` into plans that join into one path."""
    produced = 0

    def rec(i: int, plan: _Plan):
        nonlocal produced
        if produced >= limit:
            return
        if i == len(cuts):
            if joins_up([p0], plan.remove, plan.add + plan.links, start, end):
                produced += 1
                yield plan
            return
        used = {v for l in plan.links for v in l}
        removed = set(plan.remove)
        for rem, add, link in _break_options(view, p0, cuts[i], used, reserved):
            if any(r in removed for r in rem):
                continue
            nxt = _Plan(plan.remove + rem, plan.add + add, plan.links + [link],
                        plan.cut + [cuts[i]], plan.detours + (len(rem) > 1))
            yield from rec(i + 1, nxt)

    yield from rec(0, base)


def _solve_side1(view: SplitView, links: list[tuple[int, int]], trace, depth, entry) -> list[Path] | None:
    down = [(view.down(a), view.down(b)) for a, b in links]
    flat = [v for p in down for v in p]
    if len(set(flat)) != len(flat):
        return None
    F1 = view.F1
    try:
        if len(down) == 1 and (not F1.edges or check_conditions(view.n - 1, F1).admissible):
            entry.calls.append("recurse(side 1)")
            return [_sub(view, 1, F1, links[0][0], links[0][1], trace, depth)]
        entry.calls.append(f"span{len(down)}(side 1,|F1|={len(F1)})")
        got = spanning_paths(F1, down)
    except NotFound:
        entry.notes.append(f"side-1 {len(down)}-path not found")
        return None
    return [_lift(view, 1, p) for p in got]


def _reserved_case(view: SplitView, case: int, x: int, y: int, trace, depth, entry: TraceEntry) -> Path:
    n = view.n
    bit = view.bit
    m = case - 1
    flip_ends = False
    sx, sy = view.side(x), view.side(y)
    if sx != sy and sx == 1:
        x, y = y, x
        flip_ends = True
    where = "a" if sx == sy == 0 else "c" if sx == sy == 1 else "b"

    t0 = None
    if case == 4:
        (te,) = view.Fc
        t0 = te[0] if view.side(te[0]) == 0 else te[1]
    avoid = {y ^ bit} if where == "b" else {x ^ bit, y ^ bit} if where == "c" else set()
    fc_touch = {v for e in view.Fc for v in e}

    tried = 0
    for R in _reserve_candidates(view, m, avoid, t0):
        if tried >= MAX_RESERVE_TRIES:
            break
        tried += 1
        rest = view.F0.without(view.down_edge(e) for e in R)
        assert len(rest) <= inductive_bound(n - 1), "reserved set leaves too many faults"
        rset = set(R)
        adjacent = any((v ^ bit) in fc_touch for e in R for v in e)
        for anchor in _anchors(view, where, R, x, y):
            path = _attempt(view, where, R, rset, rest, anchor, x, y, trace, depth, entry)
            if path is not None:
                entry.reserved = list(R)
                entry.subcase = _subcase_label(case, where, adjacent)
                if flip_ends:
                    path.reverse()
                return path
    raise NotFound(f"case {case}/{where}: no reserved set and routing worked at n={n}")


def _subcase_label(case: int, where: str, adjacent: bool) -> str:
    if case == 4:
        return {"a": "4.1", "b": "4.2", "c": "4.3"}[where]
    idx = {"a": 1, "b": 2, "c": 3}[where]
    label = f"{case}.{idx}"
    if where != "c":
        label += ".2" if adjacent else ".1"
    return label


def _anchors(view: SplitView, where: str, R, x: int, y: int):
    """Endpoint choices for the side-0 recursion."""
    bit = view.bit
    if where == "a":
        yield ("path", x, y)
    elif where == "b":
        avoid = {v for e in R for v in e} | {y ^ bit}
        for r in itertools.islice(_first_bridge(view, x, avoid), MAX_ANCHOR_TRIES):
            yield ("bridge", x, r)
    else:
        for e in R:
            u0, v0 = e
            if cube.parity(u0) != cube.parity(x):
                u0, v0 = v0, u0
            if not (view.cross_ok(u0) and view.cross_ok(v0)):
                continue
            if {u0 ^ bit, v0 ^ bit} & {x, y}:
                continue
            yield ("edge", u0, v0)


def _attempt(view, where, R, rset, rest, anchor, x, y, trace, depth, entry) -> Path | None:
    bit = view.bit
    kind, a0, b0 = anchor
    try:
        p0 = _sub(view, 0, rest, a0, b0, trace, depth)
    except NotFound:
        return None
    on = set(path_edges(p0))
    if kind == "path":
        base = _Plan([], [], [], [])
        start, end = x, y
    elif kind == "bridge":
        base = _Plan([], [cube.edge(b0, b0 ^ bit)], [(b0 ^ bit, y)], [])
        start, end = x, y
    else:
        base = _Plan([], [cube.edge(a0, a0 ^ bit), cube.edge(b0, b0 ^ bit)],
                     [(x, a0 ^ bit), (b0 ^ bit, y)], [])
        start, end = x, y
    anchor_edge = cube.edge(a0, b0) if kind == "edge" else None
    cuts = [e for e in R if e in on and e != anchor_edge]
    cut_sets = [cuts]
    if kind == "path" and not cuts:
        # nothing forces a cut, but side 1 still has to be absorbed somewhere
        cut_sets = []
        skip: list[Edge] = []
        for _ in range(4):
            try:
                e = select_path_edge(p0, bit, forbidden_cross=view.Fc, exclude=skip)
            except NoEdge:
                break
            skip.append(e)
            cut_sets.append([e])
    for cuts in cut_sets:
        for plan in _plans(view, p0, cuts, base, rset, start, end):
            side1 = _solve_side1(view, plan.links, trace, depth, entry)
            if side1 is None:
                continue
            try:
                path = rewire([p0, *side1], plan.remove, plan.add, start, end)
            except SpliceError as exc:
                entry.notes.append(f"rewire rejected: {exc}")
                continue
            entry.selected = plan.cut
            if plan.detours:
                entry.notes.append(f"{plan.detours} detour(s)")
            entry.calls.insert(0, f"{kind} {cube.format_vertex(view.n, a0)}->{cube.format_vertex(view.n, b0)}")
            return path
    return None
