"""Bit-level model of the n-dimensional hypercube Q_n.

Vertices are plain ints. Coordinate ``i`` (1-based, read left to right in the
binary string form) lives at bit ``n - i``, so ``"10000"`` is coordinate 1.
Public functions take 1-based dimensions; helpers prefixed with ``_`` and the
``bit_of`` / ``dim_of_bit`` pair are the only place the conversion happens.

Edges are canonical tuples ``(lo, hi)`` with ``lo < hi``; ``lo`` is the
endpoint whose bit in the edge's dimension is 0.
"""

from __future__ import annotations

from typing import Iterable, Iterator

Edge = tuple[int, int]

MAX_DIM = 62


class CubeError(ValueError):
    pass


def check_dim(n: int) -> None:
    if not 1 <= n <= MAX_DIM:
        raise CubeError(f"dimension must be in [1, {MAX_DIM}], got {n}")


def bit_of(n: int, j: int) -> int:
    """Mask of coordinate ``j`` (1-based) in an n-bit label."""
    if not 1 <= j <= n:
        raise CubeError(f"dimension index {j} outside [1, {n}]")
    return 1 << (n - j)


def dim_of_bit(n: int, mask: int) -> int:
    return n - mask.bit_length() + 1


def check_vertex(n: int, v: int) -> None:
    if not 0 <= v < (1 << n):
        raise CubeError(f"vertex {v} is not a label of Q_{n}")


def parity(v: int) -> int:
    return v.bit_count() & 1


def edge(u: int, v: int) -> Edge:
    """Canonical edge between two adjacent vertices."""
    d = u ^ v
    if d == 0 or d & (d - 1):
        raise CubeError(f"{u} and {v} are at Hamming distance {d.bit_count()}, not 1")
    return (u, v) if u < v else (v, u)


def edge_dimension(n: int, e: Edge) -> int:
    u, v = e
    d = u ^ v
    if d == 0 or d & (d - 1):
        raise CubeError(f"{e} is not a hypercube edge")
    return dim_of_bit(n, d)


def edge_parity(e: Edge) -> int:
    # the lower endpoint has the smaller coordinate sum
    return parity(e[0])


def neighbor(n: int, v: int, j: int) -> int:
    return v ^ bit_of(n, j)


def neighbors(n: int, v: int) -> Iterator[int]:
    for k in range(n):
        yield v ^ (1 << (n - 1 - k))


def hamming(u: int, v: int) -> int:
    return (u ^ v).bit_count()


def vertices(n: int) -> range:
    return range(1 << n)


def all_edges(n: int) -> Iterator[Edge]:
    for j in range(1, n + 1):
        yield from layer_edges(n, j)


def layer_edges(n: int, j: int) -> list[Edge]:
    b = bit_of(n, j)
    return [(v, v | b) for v in range(1 << n) if not v & b]


def incident_edges(n: int, v: int) -> list[Edge]:
    return [edge(v, w) for w in neighbors(n, v)]


def project(n: int, v: int, j: int) -> tuple[int, int]:
    """Drop coordinate ``j``; return ``(theta, v')`` with ``v'`` an (n-1)-bit label."""
    b = bit_of(n, j)
    theta = 1 if v & b else 0
    high = (v >> (n - j + 1)) << (n - j)
    low = v & (b - 1)
    return theta, high | low


def embed(n: int, w: int, j: int, theta: int) -> int:
    """Inverse of :func:`project`: ``n`` is the dimension of the *result*."""
    b = bit_of(n, j)
    high = (w >> (n - j)) << (n - j + 1)
    low = w & (b - 1)
    return high | low | (b if theta else 0)


def project_edge(n: int, e: Edge, j: int) -> Edge:
    (_, a), (_, b) = project(n, e[0], j), project(n, e[1], j)
    return edge(a, b)


def embed_edge(n: int, e: Edge, j: int, theta: int) -> Edge:
    return edge(embed(n, e[0], j, theta), embed(n, e[1], j, theta))


# -- text forms -------------------------------------------------------------

def format_vertex(n: int, v: int) -> str:
    return format(v, f"0{n}b")


def parse_vertex(n: int, s: str) -> int:
    s = s.strip()
    if len(s) != n or any(c not in "01" for c in s):
        raise CubeError(f"expected a {n}-character binary string, got {s!r}")
    return int(s, 2)


def format_edge(n: int, e: Edge) -> str:
    return f"{format_vertex(n, e[0])} {format_vertex(n, e[1])}"


def parse_edge(n: int, s: str) -> Edge:
    parts = s.split()
    if len(parts) != 2:
        raise CubeError(f"an edge is two vertex strings separated by a space, got {s!r}")
    return edge(parse_vertex(n, parts[0]), parse_vertex(n, parts[1]))


def edges_touching(edges: Iterable[Edge]) -> set[int]:
    out: set[int] = set()
    for u, v in edges:
        out.add(u)
        out.add(v)
    return out
