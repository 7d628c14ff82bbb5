"""Digraph container, edge-list I/O and the acyclicity / DAG path primitives.

Vertices are the dense integers ``0..n-1``.  Vertex sets are handled as
``frozenset`` values at the API boundary and as integer bitmasks internally
(bit ``v`` set iff ``v`` is a member).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Union

VertexSetLike = Union[int, Iterable[int]]

Path = tuple[int, ...]


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def bit_members(mask: int) -> list[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def mask_of(vertices: VertexSetLike) -> int:
    if isinstance(vertices, int):
        return vertices
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Digraph:
    """Simple digraph on ``0..n-1``; digons allowed, loops and parallel arcs not."""

    n: int
    arcs: frozenset

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        for u, v in arcs:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"arc ({u},{v}) out of range for n={self.n}")
        object.__setattr__(self, "arcs", arcs)

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        arcs = list(arcs)
        if len(set(arcs)) != len(arcs):
            raise ValueError("duplicate arc")
        return cls(n, frozenset(arcs))

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def out_masks(self) -> tuple[int, ...]:
        out = [0] * self.n
        for u, v in self.arcs:
            out[u] |= 1 << v
        return tuple(out)

    @cached_property
    def in_masks(self) -> tuple[int, ...]:
        inn = [0] * self.n
        for u, v in self.arcs:
            inn[v] |= 1 << u
        return tuple(inn)

    @cached_property
    def adj_masks(self) -> tuple[int, ...]:
        """Neighbourhoods in the underlying graph."""
        return tuple(o | i for o, i in zip(self.out_masks, self.in_masks))

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def successors(self, v: int) -> list[int]:
        return bit_members(self.out_masks[v])

    def induced_arcs(self, vertices: VertexSetLike) -> list[tuple[int, int]]:
        m = mask_of(vertices)
        return sorted((u, v) for u, v in self.arcs if m >> u & 1 and m >> v & 1)

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={self.sorted_arcs()})"


def parse_edge_list(text: str) -> Digraph:
    """Parse the ``n m`` header + ``u v`` arc lines format; ``#`` lines are comments."""
    header = None
    arcs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    expected = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ParseError(lineno, f"expected two integers, got {raw!r}")
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(lineno, f"non-integer field in {raw!r}") from None
        if header is None:
            if a < 0 or b < 0:
                raise ParseError(lineno, "negative header value")
            header = (a, b)
            expected = b
            continue
        n = header[0]
        if len(arcs) >= expected:
            raise ParseError(lineno, f"more than the declared {expected} arcs")
        if not (0 <= a < n and 0 <= b < n):
            raise ParseError(lineno, f"vertex out of range 0..{n - 1}")
        if a == b:
            raise ParseError(lineno, f"self-loop at {a}")
        if (a, b) in seen:
            raise ParseError(lineno, f"duplicate arc {a} {b}")
        seen.add((a, b))
        arcs.append((a, b))
    if header is None:
        raise ParseError(0, "missing 'n m' header")
    if len(arcs) != expected:
        raise ParseError(0, f"declared {expected} arcs, found {len(arcs)}")
    return Digraph(header[0], frozenset(arcs))


def to_edge_list(D: Digraph) -> str:
    """Canonical edge-list text: header then arcs in sorted order."""
    lines = [f"{D.n} {len(D.arcs)}"]
    lines.extend(f"{u} {v}" for u, v in D.sorted_arcs())
    return "\n".join(lines) + "\n"


def to_dot(D: Digraph, name: str = "D") -> str:
    lines = [f"digraph {name} {{"]
    lines.extend(f"  {v};" for v in D.vertices)
    lines.extend(f"  {u} -> {v};" for u, v in D.sorted_arcs())
    lines.append("}")
    return "\n".join(lines) + "\n"


def underlying_graph(D: Digraph) -> frozenset:
    """Edge set of U(D) as 2-element frozensets; a digon collapses to one edge."""
    return frozenset(frozenset(a) for a in D.arcs)


def is_acyclic(D: Digraph, S: VertexSetLike | None = None) -> bool:
    """Whether D[S] has no directed cycle, by repeatedly deleting sources."""
    remaining = D.full_mask if S is None else mask_of(S)
    if remaining & ~D.full_mask:
        raise ValueError("vertex set outside the vertex range")
    inn = D.in_masks
    while remaining:
        sources = 0
        m = remaining
        while m:
            low = m & -m
            v = low.bit_length() - 1
            if not inn[v] & remaining:
                sources |= low
            m ^= low
        if not sources:
            return False
        remaining &= ~sources
    return True


def topological_order(D: Digraph) -> list[int]:
    """Smallest-available-first topological order; raises on a cycle."""
    indeg = [popcount(m) for m in D.in_masks]
    ready = sorted(v for v in D.vertices if indeg[v] == 0)
    order: list[int] = []
    heapq.heapify(ready)
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for w in D.successors(v):
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    if len(order) != D.n:
        raise ValueError("digraph has a directed cycle")
    return order


def longest_path_dag(D: Digraph) -> Path:
    """Maximum-order path of an acyclic digraph.

    Ties go to the lexicographically smallest vertex sequence.  Raises
    ``ValueError`` on cyclic input.
    """
    if D.n == 0:
        raise ValueError("empty digraph has no path")
    order = topological_order(D)
    best: dict[int, tuple[int, ...]] = {}
    for v in reversed(order):
        tail: tuple[int, ...] = ()
        for w in D.successors(v):
            cand = best[w]
            if len(cand) > len(tail) or (len(cand) == len(tail) and cand < tail):
                tail = cand
        best[v] = (v,) + tail
    return min(best.values(), key=lambda p: (-len(p), p))


def iter_paths(D: Digraph) -> Iterator[Path]:
    """Every directed path (as a vertex tuple), in DFS order from each start."""

    def extend(path: list[int], used: int) -> Iterator[Path]:
        yield tuple(path)
        for w in D.successors(path[-1]):
            if not used >> w & 1:
                path.append(w)
                yield from extend(path, used | 1 << w)
                path.pop()

    for v in D.vertices:
        yield from extend([v], 1 << v)
