"""Constructors for the path systems the main recursion relies on.

Fault-free and single-fault Hamiltonian paths are built by splitting along
one dimension and stitching halves. Spanning k-paths in lightly faulty cubes
use the same split-and-bridge recursion down to dimension ``SEARCH_DIM``,
where complete backtracking search takes over.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import replace
from typing import Sequence

from . import cube, settings
from .cube import Edge
from .errors import ConditionViolated, ContractViolation, NotFound, SameParity
from .faults import FaultSet, check_conditions, separating_direction, split
from .paths import (
    Path,
    is_balanced,
    orient,
    path_edges,
    rewire,
    verify_hamiltonian_path,
    verify_spanning_k_path,
)
from .search import find_paths, required_imbalance

log = logging.getLogger(__name__)

SEARCH_DIM = 5
SEARCH_NODE_LIMIT = 200_000


def _bits(n: int) -> list[int]:
    return [1 << k for k in range(n)]


def _check(report, what: str) -> None:
    if not report.ok:
        raise AssertionError(f"{what}: {'; '.join(report.problems)}")


# -- fault-free Hamiltonian paths -------------------------------------------

def _havel(free: list[int], x: int, y: int) -> Path:
    """Hamiltonian path x -> y of the subcube spanned by ``free`` through x."""
    if not free:
        return [x]
    if len(free) == 1:
        return [x, y]
    diff = x ^ y
    d = next(b for b in free if diff & b)
    rest = [b for b in free if b != d]
    bad = diff ^ d
    b = next(b for b in rest if b != bad)
    r = x ^ b
    return _havel(rest, x, r) + _havel(rest, r ^ d, y)


def ham_path_fault_free(n: int, x: int, y: int) -> Path:
    cube.check_vertex(n, x)
    cube.check_vertex(n, y)
    if cube.parity(x) == cube.parity(y):
        raise SameParity(f"{cube.format_vertex(n, x)} and {cube.format_vertex(n, y)} have equal parity")
    return _havel(_bits(n), x, y)


# -- prescribed edge --------------------------------------------------------

def _subcube_paths(free: list[int], x: int, y: int):
    """Enumerate Hamiltonian x -> y paths of a small subcube."""
    mask = 0
    for b in free:
        mask |= b
    base = x & ~mask
    verts = {base | sum(c) for r in range(len(free) + 1) for c in itertools.combinations(free, r)}
    total = len(verts)
    path = [x]
    seen = {x}

    def rec():
        cur = path[-1]
        if len(path) == total:
            if cur == y:
                yield list(path)
            return
        for b in free:
            w = cur ^ b
            if w in seen or (w == y and len(path) != total - 1):
                continue
            seen.add(w)
            path.append(w)
            yield from rec()
            path.pop()
            seen.discard(w)

    yield from rec()


def _through(free: list[int], f: Edge, x: int, y: int) -> Path:
    if len(free) <= 3:
        for p in _subcube_paths(free, x, y):
            if f in path_edges(p):
                return p
        raise NotFound("no Hamiltonian path through the prescribed edge")
    df = f[0] ^ f[1]
    diff = x ^ y
    sep = [b for b in free if b != df and diff & b]
    if sep:
        d = sep[0]
        rest = [b for b in free if b != d]
        if (f[0] & d) == (x & d):
            for b in rest:
                r = x ^ b
                if r ^ d == y or cube.edge(x, r) == f:
                    continue
                return _through(rest, f, x, r) + _havel(rest, r ^ d, y)
        else:
            for b in rest:
                r = y ^ b
                if r ^ d == x or cube.edge(r, y) == f:
                    continue
                return _havel(rest, x, r ^ d) + _through(rest, f, r, y)
        raise NotFound("no bridge vertex")
    d = next(b for b in free if b != df)
    rest = [b for b in free if b != d]
    if (f[0] & d) == (x & d):
        p0 = _through(rest, f, x, y)
        for i, (a, b) in enumerate(zip(p0, p0[1:])):
            if cube.edge(a, b) != f:
                return p0[: i + 1] + _havel(rest, a ^ d, b ^ d) + p0[i + 1:]
    else:
        p0 = _havel(rest, x, y)
        for i, (a, b) in enumerate(zip(p0, p0[1:])):
            if cube.edge(a ^ d, b ^ d) != f:
                return p0[: i + 1] + _through(rest, f, a ^ d, b ^ d) + p0[i + 1:]
    raise NotFound("no absorbing edge")


def ham_path_through_edge(n: int, f: Edge, x: int, y: int) -> Path:
    """Hamiltonian x -> y path of Q_n that traverses the edge ``f``."""
    f = cube.edge(*f)
    if n < 2:
        raise ContractViolation("a prescribed-edge path needs n >= 2")
    if cube.parity(x) == cube.parity(y):
        raise SameParity("endpoints have equal parity")
    if (x ^ y).bit_count() == 1 and cube.edge(x, y) == f:
        raise ContractViolation("the prescribed edge may not be xy itself")
    p = _through(_bits(n), f, x, y)
    if settings.VERIFY_STEPS:
        _check(verify_hamiltonian_path(n, None, x, y, p), "prescribed-edge path")
        assert f in path_edges(p)
    return p


# -- one faulty edge --------------------------------------------------------

def _avoid_parallel(free: list[int], d: int, bad: set[Edge], x: int, y: int) -> Path:
    """Hamiltonian path avoiding faulty edges that all lie in dimension ``d``."""
    rest = [b for b in free if b != d]
    if (x & d) == (y & d):
        p0 = _havel(rest, x, y)
        for i, (a, b) in enumerate(zip(p0, p0[1:])):
            if cube.edge(a, a ^ d) not in bad and cube.edge(b, b ^ d) not in bad:
                return p0[: i + 1] + _havel(rest, a ^ d, b ^ d) + p0[i + 1:]
        raise NotFound("every path edge has a faulty crossing")
    for b in rest:
        r = x ^ b
        if cube.edge(r, r ^ d) in bad or r ^ d == y:
            continue
        return _havel(rest, x, r) + _havel(rest, r ^ d, y)
    raise NotFound("no bridge vertex")


def ham_path_avoiding_edge(n: int, f: Edge, x: int, y: int) -> Path:
    """Hamiltonian x -> y path of Q_n - f."""
    f = cube.edge(*f)
    if n < 3:
        raise ContractViolation("a Hamiltonian path avoiding an edge needs n >= 3")
    if cube.parity(x) == cube.parity(y):
        raise SameParity("endpoints have equal parity")
    p = _avoid_parallel(_bits(n), f[0] ^ f[1], {f}, x, y)
    if settings.VERIFY_STEPS:
        _check(verify_hamiltonian_path(n, FaultSet(n, [f]), x, y, p), "single-fault path")
    return p


# -- spanning k-paths -------------------------------------------------------

def _imbalance_of(n: int, blocked: Sequence[int]) -> int:
    return -sum(1 if cube.parity(v) == 0 else -1 for v in blocked)


def _lift(view, s: int, p: Sequence[int]) -> Path:
    up = view.up
    return [up(s, w) for w in p]


def spanning_paths(
    faults: FaultSet,
    pairs: Sequence[tuple[int, int]],
    blocked: Sequence[int] = (),
) -> list[Path]:
    """Vertex-disjoint a_i -> b_i paths covering Q_n - F minus ``blocked``.

    No existence precondition is checked beyond the necessary colour count;
    raises :class:`NotFound` when the recursion and search both fail.
    """
    pairs = [tuple(p) for p in pairs]
    out = _span(faults, pairs, tuple(sorted(set(blocked))), 0)
    if out is None:
        raise NotFound(f"no spanning {len(pairs)}-path found in Q_{faults.n}")
    out = orient(out, pairs)
    if settings.VERIFY_STEPS:
        _check(verify_spanning_k_path(faults.n, faults, pairs, out, blocked), "spanning paths")
    return out


def _span(F: FaultSet, pairs, blocked, depth):
    n = F.n
    ends = [v for p in pairs for v in p]
    bset = set(blocked)
    if len(set(ends)) != len(ends) or bset & set(ends):
        return None
    if _imbalance_of(n, blocked) != required_imbalance(pairs):
        return None
    if n <= SEARCH_DIM:
        r = find_paths(F, pairs, blocked, node_limit=SEARCH_NODE_LIMIT)
        return r.paths if r.found else None
    if len(pairs) == 1 and not blocked:
        x, y = pairs[0]
        if cube.parity(x) == cube.parity(y):
            return None
        if not F.edges:
            return [_havel(_bits(n), x, y)]
        if check_conditions(n, F).admissible:
            from .engine import solve_path
            return [solve_path(F, x, y)]
    for j in _dim_order(F, pairs):
        got = _span_split(F, pairs, blocked, j, depth)
        if got is not None:
            return got
    if n <= SEARCH_DIM + 1:
        r = find_paths(F, pairs, blocked, node_limit=SEARCH_NODE_LIMIT * 5)
        if r.found:
            return r.paths
    return None


def split_route(faults: FaultSet, pairs: Sequence[tuple[int, int]]) -> list[Path] | None:
    """Try one split-and-bridge step along each dimension; ``None`` if none works.

    Used as a shortcut by exact solvers whose search stalls: halves of a
    small cube are much cheaper to search than the whole.
    """
    pairs = [tuple(p) for p in pairs]
    for j in _dim_order(faults, pairs):
        got = _span_split(faults, pairs, (), j, 0)
        if got is not None:
            got = orient(got, pairs)
            if settings.VERIFY_STEPS:
                _check(verify_spanning_k_path(faults.n, faults, pairs, got), "split route")
            return got
    return None


def _dim_order(F: FaultSet, pairs) -> list[int]:
    n = F.n
    score = []
    for j in range(1, n + 1):
        b = cube.bit_of(n, j)
        side_faults = [0, 0]
        for u, v in F.edges:
            if u ^ v != b:
                side_faults[1 if u & b else 0] += 1
        crossing = sum(1 for a, c in pairs if (a ^ c) & b)
        inside = [0, 0]
        for a, c in pairs:
            if not (a ^ c) & b:
                inside[1 if a & b else 0] += 1
        score.append((max(side_faults), crossing + max(inside), j))
    score.sort()
    return [j for *_, j in score]


def _bridge_options(view, pairs, blocked):
    """Yield (side pairs, joins) plans for routing each crossing pair through a bridge edge."""
    n = view.n
    bit = view.bit
    cross = [i for i, (a, b) in enumerate(pairs) if (a ^ b) & bit]
    taken = {v for p in pairs for v in p} | set(blocked)
    blocked_side = [[], []]
    for v in blocked:
        blocked_side[view.side(v)].append(view.down(v))
    need_side = [_imbalance_of(n - 1, blocked_side[s]) for s in (0, 1)]

    fixed = [[], []]
    for i, (a, b) in enumerate(pairs):
        if i not in cross:
            fixed[view.side(a)].append((a, b))

    for parities in itertools.product((1, 0), repeat=len(cross)):
        # parity flag 1: bridge vertex on a's side has parity opposite to a
        side_pairs = [list(fixed[0]), list(fixed[1])]
        plan_ok = True
        ghost = []
        for i, flag in zip(cross, parities):
            a, b = pairs[i]
            pa = cube.parity(a)
            want = 1 - pa if flag else pa
            # use placeholder parity vertices for the balance test
            ghost.append((i, want))
        imb = [required_imbalance(side_pairs[0]), required_imbalance(side_pairs[1])]
        for i, want in ghost:
            a, b = pairs[i]
            sa = view.side(a)
            if cube.parity(a) == want:
                imb[sa] += 1 if want == 0 else -1
            # the far half joins r' (parity 1 - want) to b
            if 1 - want == cube.parity(b):
                imb[1 - sa] += 1 if cube.parity(b) == 0 else -1
        if imb != need_side:
            continue
        used = set(taken)
        joins = []
        for i, want in ghost:
            a, b = pairs[i]
            cands = []
            for w in cube.neighbors(n, a):
                if not (w ^ a) & bit:
                    cands.append(w)
            sa = view.side(a)
            cands += sorted(range(1 << n), key=lambda v: (v ^ a).bit_count())
            r = None
            for c in cands:
                if view.side(c) != sa or c in used or (c ^ bit) in used:
                    continue
                if cube.parity(c) != want or not view.cross_ok(c):
                    continue
                r = c
                break
            if r is None:
                plan_ok = False
                break
            used.update((r, r ^ bit))
            joins.append((i, r))
            side_pairs[sa].append((a, r))
            side_pairs[1 - sa].append((r ^ bit, b))
        if plan_ok:
            yield side_pairs, joins, blocked_side


def _span_split(F: FaultSet, pairs, blocked, j, depth):
    n = F.n
    view = split(n, F, j)
    bit = view.bit
    for side_pairs, joins, blocked_side in itertools.islice(_bridge_options(view, pairs, blocked), 2):
        down = [[(view.down(a), view.down(b)) for a, b in side_pairs[s]] for s in (0, 1)]
        sols = [None, None]
        empty = [s for s in (0, 1) if not down[s]]
        if len(empty) == 2:
            return None
        solved = True
        for s in (0, 1):
            if down[s]:
                got = _span(view.faults(s), down[s], tuple(blocked_side[s]), depth + 1)
                if got is None:
                    solved = False
                    break
                sols[s] = [_lift(view, s, p) for p in orient(got, down[s])]
        if not solved:
            continue
        absorbed = None
        if empty:
            t = empty[0]
            s = 1 - t
            blocked_t = set(blocked_side[t])
            tries = 0
            for p in sols[s]:
                for a, b in zip(p, p[1:]):
                    if not (view.cross_ok(a) and view.cross_ok(b)):
                        continue
                    if view.down(a ^ bit) in blocked_t or view.down(b ^ bit) in blocked_t:
                        continue
                    tries += 1
                    got = _span(view.faults(t), [(view.down(a ^ bit), view.down(b ^ bit))],
                                tuple(blocked_side[t]), depth + 1)
                    if got is not None:
                        absorbed = (a, b, _lift(view, t, orient(got, [(view.down(a ^ bit), view.down(b ^ bit))])[0]))
                        break
                    if tries >= 3:
                        break
                if absorbed or tries >= 3:
                    break
            if absorbed is None:
                continue
        return _assemble(view, pairs, side_pairs, sols, joins, absorbed)
    return None


def _assemble(view, pairs, side_pairs, sols, joins, absorbed):
    bit = view.bit
    by_start: dict[int, Path] = {}
    for s in (0, 1):
        if sols[s] is None:
            continue
        for p in sols[s]:
            by_start[p[0]] = p
    if absorbed is not None:
        a, b, ins = absorbed
        for start, p in by_start.items():
            for i in range(len(p) - 1):
                if {p[i], p[i + 1]} == {a, b}:
                    seg = ins if ins[0] == p[i] ^ bit else ins[::-1]
                    by_start[start] = p[: i + 1] + seg + p[i + 1:]
                    break
            else:
                continue
            break
    joined = dict(joins)
    out = []
    for i, (a, b) in enumerate(pairs):
        if i in joined:
            r = joined[i]
            out.append(by_start[a] + by_start[r ^ bit])
        else:
            out.append(by_start[a])
    return out


def spanning_k_path(n: int, pairs: Sequence[tuple[int, int]]) -> list[Path]:
    """Fault-free spanning k-path for a balanced pair set meeting 2k - |pairs that are edges| < n."""
    pairs = [tuple(p) for p in pairs]
    ends = [v for p in pairs for v in p]
    if len(set(ends)) != len(ends):
        raise ContractViolation("endpoints must be distinct")
    for v in ends:
        cube.check_vertex(n, v)
    if not is_balanced(pairs):
        raise ContractViolation("pair set is not balanced")
    adjacent = sum(1 for a, b in pairs if (a ^ b).bit_count() == 1)
    lhs = 2 * len(pairs) - adjacent
    if not lhs < n:
        raise ConditionViolated(f"2k - |edges among pairs| = {lhs} is not below n = {n}")
    return spanning_paths(FaultSet(n), pairs)


def spanning_2path(
    n: int,
    faults: FaultSet | None,
    uv: tuple[int, int],
    xy: tuple[int, int],
    uv_as_edge: bool = False,
) -> list[Path]:
    """Spanning 2-path P_uv + P_xy of Q_n - F for a balanced quadruple."""
    faults = faults if faults is not None else FaultSet(n)
    u, v = uv
    x, y = xy
    if len({u, v, x, y}) != 4:
        raise ContractViolation("u, v, x, y must be distinct")
    for w in (u, v, x, y):
        cube.check_vertex(n, w)
    if not is_balanced([uv, xy]):
        raise ContractViolation("{u, v, x, y} is not balanced")
    if faults.edges:
        if n < 4 or len(faults) > 2 * n - 7:
            raise ContractViolation(f"faulty 2-path needs n >= 4 and |F| <= {2 * n - 7}")
    elif n < 2:
        raise ContractViolation("2-path needs n >= 2")
    if uv_as_edge and (u ^ v).bit_count() == 1 and not faults.is_faulty(u, v):
        rest = spanning_paths(faults, [xy], blocked=[u, v])
        return [[u, v], rest[0]]
    return spanning_paths(faults, [uv, xy])


def spanning_3path_minus_edge(
    n: int,
    f: Edge,
    uv: Edge,
    xy: tuple[int, int],
    wz: tuple[int, int],
) -> list[Path]:
    """Spanning 3-path P_uv + P_xy + P_wz of Q_n - f, ``uv`` an edge disjoint from ``f``.

    Splits so ``uv`` and ``f`` fall in different halves, then routes each
    pair according to which halves its endpoints lie in.
    """
    f = cube.edge(*f)
    uv = cube.edge(*uv)
    x, y = xy
    w, z = wz
    if n < 5:
        raise ContractViolation("needs n >= 5")
    if set(f) & set(uv):
        raise ContractViolation("f and uv must be vertex-disjoint")
    if len({*uv, x, y, w, z}) != 6:
        raise ContractViolation("u, v, x, y, w, z must be distinct")
    if cube.parity(x) == cube.parity(y) or cube.parity(w) == cube.parity(z):
        raise SameParity("each pair needs opposite parity")
    F = FaultSet(n, [f])
    pairs = [uv, (x, y), (w, z)]
    try:
        out = _three_path_by_halves(n, f, uv, (x, y), (w, z))
    except (NotFound, ContractViolation) as exc:
        log.debug("3-path by halves failed (%s); falling back to recursive search", exc)
        out = spanning_paths(F, pairs)
    out = orient(out, pairs)
    if settings.VERIFY_STEPS:
        _check(verify_spanning_k_path(n, F, pairs, out), "spanning 3-path")
    return out


def _three_path_by_halves(n, f, uv, xy, wz) -> list[Path]:
    j = separating_direction(n, uv, f)
    view = split(n, FaultSet(n, [f]), j)
    if view.side(uv[0]) != 0:
        view = replace(view, F0=view.F1, F1=view.F0, flip=1)
    # side 0 holds uv, side 1 holds f
    assert view.side(uv[0]) == 0 and view.side(f[0]) == 1

    def kind(p):
        s = (view.side(p[0]), view.side(p[1]))
        return "00" if s == (0, 0) else "11" if s == (1, 1) else "01"

    def first_on_zero(p):
        return p if view.side(p[0]) == 0 else (p[1], p[0])

    xy = first_on_zero(xy) if kind(xy) == "01" else xy
    wz = first_on_zero(wz) if kind(wz) == "01" else wz
    kinds = (kind(xy), kind(wz))
    swapped = kinds in (("11", "00"), ("00", "01"), ("11", "01"))
    if swapped:
        xy, wz = wz, xy
        kinds = kinds[::-1]
    puv, pa, pb = _route_halves(view, kinds, uv, xy, wz)
    return [puv, pb, pa] if swapped else [puv, pa, pb]


def _route_halves(view, kinds, uv, xy, wz) -> list[Path]:
    n = view.n
    bit = view.bit
    m = n - 1
    g1 = view.F1
    d = view.down
    u, v = uv
    f1 = next(iter(g1.edges))

    def lift(s, ps):
        return [_lift(view, s, p) for p in ps]

    taken = {u, v, *xy, *wz}

    def bridge_near(a):
        """Side-0 neighbour of ``a`` usable as a bridge; adjacency keeps the 0-side pair an edge."""
        for c in cube.neighbors(n, a):
            if (c ^ a) & bit or c in taken or (c ^ bit) in taken:
                continue
            taken.update((c, c ^ bit))
            return c
        raise NotFound("no bridge vertex")

    if kinds == ("00", "11"):
        p0 = spanning_2path(m, None, (d(xy[0]), d(xy[1])), (d(u), d(v)))
        p1 = ham_path_avoiding_edge(m, f1, d(wz[0]), d(wz[1]))
        pxy, puv = lift(0, p0)
        return [puv, pxy, _lift(view, 1, p1)]
    if kinds == ("01", "01"):
        x, y = xy
        w_, z = wz
        s0 = bridge_near(x)
        r0 = bridge_near(w_)
        q0 = spanning_paths(FaultSet(m), [(d(x), d(s0)), (d(w_), d(r0)), (d(u), d(v))])
        q1 = spanning_2path(m, g1, (d(y), d(s0 ^ bit)), (d(z), d(r0 ^ bit)))
        a0, b0, c0 = lift(0, orient(q0, [(d(x), d(s0)), (d(w_), d(r0)), (d(u), d(v))]))
        a1, b1 = lift(1, orient(q1, [(d(s0 ^ bit), d(y)), (d(r0 ^ bit), d(z))]))
        return [c0, a0 + a1, b0 + b1]
    if kinds == ("11", "11"):
        q1 = spanning_2path(m, g1, (d(xy[0]), d(xy[1])), (d(wz[0]), d(wz[1])))
        p0 = ham_path_fault_free(m, d(u), d(v))
        a1, b1 = lift(1, q1)
        return [_lift(view, 0, p0), a1, b1]
    if kinds == ("01", "11"):
        x, y = xy
        s0 = bridge_near(x)
        q0 = spanning_2path(m, None, (d(x), d(s0)), (d(u), d(v)))
        q1 = spanning_2path(m, g1, (d(s0 ^ bit), d(y)), (d(wz[0]), d(wz[1])))
        a0, c0 = lift(0, orient(q0, [(d(x), d(s0)), (d(u), d(v))]))
        a1, b1 = lift(1, orient(q1, [(d(s0 ^ bit), d(y)), (d(wz[0]), d(wz[1]))]))
        return [c0, a0 + a1, b1]
    if kinds == ("01", "00"):
        x, y = xy
        s0 = bridge_near(x)
        q0 = spanning_paths(FaultSet(m), [(d(x), d(s0)), (d(u), d(v)), (d(wz[0]), d(wz[1]))])
        p1 = ham_path_avoiding_edge(m, f1, d(s0 ^ bit), d(y))
        a0, c0, b0 = lift(0, q0)
        return [c0, a0 + _lift(view, 1, p1), b0]
    # all four endpoints next to uv: absorb the other half into the longest path
    q0 = spanning_paths(FaultSet(m), [(d(xy[0]), d(xy[1])), (d(u), d(v)), (d(wz[0]), d(wz[1]))])
    lifted = lift(0, q0)
    order = sorted(range(3), key=lambda i: -len(lifted[i]))
    for i in order:
        p = lifted[i]
        for a, b in zip(p, p[1:]):
            p1 = ham_path_avoiding_edge(m, f1, d(a ^ bit), d(b ^ bit))
            lifted[i] = rewire([p, _lift(view, 1, p1)], [(a, b)], [(a, a ^ bit), (b, b ^ bit)], p[0], p[-1])
            pxy, puv, pwz = lifted
            return [puv, pxy, pwz]
    raise NotFound("no absorbing edge")
