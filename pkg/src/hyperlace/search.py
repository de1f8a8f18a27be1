"""Backtracking search for spanning path systems on small faulty cubes.

Vertex sets are Python ints used as bitsets over the 2^n labels, so
neighbourhood and degree computations run one shift per dimension.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Sequence

from . import cube
from .faults import FaultSet


class _Budget(Exception):
    pass


@dataclass
class SearchResult:
    status: str  # "found" | "absent" | "budget"
    paths: list[list[int]] | None
    nodes: int

    @property
    def found(self) -> bool:
        return self.status == "found"


class _Cube:
    def __init__(self, faults: FaultSet):
        self.n = n = faults.n
        self.live = faults.live_masks
        self.shifts = [1 << k for k in range(n)]
        self.adj = faults.adjacency
        self.white = sum(1 << v for v in range(1 << n) if not cube.parity(v))

    def spread(self, s: int) -> int:
        out = 0
        for sh, lm in zip(self.shifts, self.live):
            out |= ((s & lm) << sh) | ((s >> sh) & lm)
        return out

    def counts(self, s: int) -> tuple[int, int, int]:
        """Masks of vertices with >=1, >=2, >=3 live neighbours in ``s``."""
        one = two = three = 0
        for sh, lm in zip(self.shifts, self.live):
            m = ((s & lm) << sh) | ((s >> sh) & lm)
            three |= two & m
            two |= one & m
            one |= m
        return one, two, three

    def component(self, seed: int, within: int) -> int:
        comp = seed
        while True:
            nxt = comp | (self.spread(comp) & within)
            if nxt == comp:
                return comp
            comp = nxt

    def imbalance(self, s: int) -> int:
        w = (s & self.white).bit_count()
        return w - (s.bit_count() - w)


def required_imbalance(pairs: Sequence[tuple[int, int]]) -> int:
    """White-minus-black vertex count a set of paths with these endpoints must cover."""
    out = 0
    for a, b in pairs:
        pa = cube.parity(a)
        if pa == cube.parity(b):
            out += 1 if pa == 0 else -1
    return out


def find_paths(
    faults: FaultSet,
    pairs: Sequence[tuple[int, int]],
    blocked: Sequence[int] = (),
    node_limit: int | None = None,
) -> SearchResult:
    """Search for vertex-disjoint paths a_i -> b_i covering every unblocked vertex.

    Without ``node_limit`` the search is complete: "absent" is a proof that no
    such system exists.
    """
    n = faults.n
    g = _Cube(faults)
    full = (1 << (1 << n)) - 1
    for v in blocked:
        full &= ~(1 << v)
    k = len(pairs)
    ends = [v for p in pairs for v in p]
    if len(set(ends)) != len(ends) or any(not full >> v & 1 for v in ends):
        return SearchResult("absent", None, 0)
    if g.imbalance(full) != required_imbalance(pairs):
        return SearchResult("absent", None, 0)

    end_mask = 0
    for v in ends:
        end_mask |= 1 << v
    a_s = [a for a, _ in pairs]
    b_s = [b for _, b in pairs]
    fut_masks = []  # endpoints of paths after i
    for i in range(k):
        m = 0
        for a, b in pairs[i + 1:]:
            m |= (1 << a) | (1 << b)
        fut_masks.append(m)

    trail: list[list[int]] = [[] for _ in range(k)]
    nodes = 0
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, (1 << n) * 2 + 200))

    def viable(i: int, h: int, u: int) -> int | None:
        """Return -1 if state passes the checks, a forced next vertex if one is forced, None if dead."""
        hb = 1 << h
        s = u | hb
        one, two, three = g.counts(s)
        fut = fut_masks[i]
        inner = u & ~end_mask
        if inner & ~two:
            return None
        bi = 1 << b_s[i]
        if u & bi and not one & bi:
            return None
        if fut:
            reach_u = g.spread(u)
            if fut & ~reach_u:
                return None
        comp = g.component(hb, s)
        if u & bi and not comp & bi:
            return None
        rest = s & ~comp
        if rest:
            if not fut:
                return None
            while rest:
                seed = rest & -rest
                c = g.component(seed, rest)
                rest &= ~c
                need = 0
                hit = False
                for j in range(i + 1, k):
                    ina, inb = (c >> a_s[j]) & 1, (c >> b_s[j]) & 1
                    if ina != inb:
                        return None
                    if ina:
                        hit = True
                        need += required_imbalance([pairs[j]])
                if not hit or g.imbalance(c) != need:
                    return None
        else:
            for j in range(i + 1, k):
                if not comp >> a_s[j] & 1:
                    return None
        nb = g.spread(hb)
        forced = nb & inner & ~three
        if forced:
            if forced & (forced - 1):
                return None
            return forced.bit_length() - 1
        return -1

    def rec(i: int, h: int, u: int) -> bool:
        nonlocal nodes
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise _Budget
        if h == b_s[i]:
            if i == k - 1:
                return u == 0
            a = a_s[i + 1]
            trail[i + 1].append(a)
            if rec(i + 1, a, u & ~(1 << a)):
                return True
            trail[i + 1].pop()
            return False
        verdict = viable(i, h, u)
        if verdict is None:
            return False
        allowed = u & ~(end_mask & ~(1 << b_s[i]))
        cands = [w for w in g.adj[h] if allowed >> w & 1]
        if verdict >= 0:
            if verdict not in cands:
                return False
            cands = [verdict]
        elif len(cands) > 1:
            cands.sort(key=lambda w: (w != b_s[i], sum(1 for z in g.adj[w] if u >> z & 1), w))
            if b_s[i] in cands and u != (1 << b_s[i]):
                # reaching the target early is only useful if later paths take the rest
                cands.remove(b_s[i])
                cands.append(b_s[i])
        for w in cands:
            trail[i].append(w)
            if rec(i, w, u & ~(1 << w)):
                return True
            trail[i].pop()
        return False

    a0 = a_s[0]
    trail[0].append(a0)
    try:
        ok = rec(0, a0, full & ~(1 << a0))
    except _Budget:
        return SearchResult("budget", None, nodes)
    finally:
        sys.setrecursionlimit(old_limit)
    if ok:
        return SearchResult("found", [list(t) for t in trail], nodes)
    return SearchResult("absent", None, nodes)
