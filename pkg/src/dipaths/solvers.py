"""Exponential-time exact solvers for alpha, alpha', chi, chi', pi and lambda.

Every solver returns a witness.  Ties between optimal witnesses are broken
deterministically:

* vertex sets: lexicographically smallest sorted vertex sequence;
* partitions: the block holding the smallest uncovered vertex is chosen as
  large as possible, then lexicographically smallest; blocks are listed in
  order of their smallest vertex;
* paths: lexicographically smallest vertex sequence.

Set families are computed by dynamic programming over vertex subsets, so the
practical range is n <= 16 (partitions cost O(3^n)).
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, Optional

from dipaths.digraph import Digraph, Path, bit_members, mask_of

BUDGET_ENV = "DIPATHS_TIME_BUDGET"
HARD_MAX_N = 24


class BudgetExceeded(RuntimeError):
    """A solver hit its vertex-count cap or wall-clock budget."""


def _env_budget() -> Optional[float]:
    raw = os.environ.get(BUDGET_ENV)
    return float(raw) if raw else None


@dataclass(frozen=True)
class SolverLimit:
    max_n: int = HARD_MAX_N
    time_budget: Optional[float] = field(default_factory=_env_budget)

    def __post_init__(self):
        if self.max_n < 1:
            raise ValueError("max_n must be at least 1")

    def start(self, D: Digraph) -> "_Clock":
        if D.n > min(self.max_n, HARD_MAX_N):
            raise BudgetExceeded(f"n={D.n} exceeds solver cap {min(self.max_n, HARD_MAX_N)}")
        return _Clock(None if self.time_budget is None else time.monotonic() + self.time_budget)


class _Clock:
    __slots__ = ("deadline", "ticks")

    def __init__(self, deadline: Optional[float]):
        self.deadline = deadline
        self.ticks = 0

    def tick(self) -> None:
        self.ticks += 1
        if self.deadline is not None and self.ticks & 0xFFF == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded("solver time budget exceeded")


DEFAULT_LIMIT = SolverLimit(time_budget=None)


def _limit(limit: Optional[SolverLimit]) -> SolverLimit:
    if limit is not None:
        return limit
    budget = _env_budget()
    return DEFAULT_LIMIT if budget is None else SolverLimit(time_budget=budget)


def lex_less(a: int, b: int) -> bool:
    """For equal-size masks: does ``a`` precede ``b`` as a sorted vertex sequence?"""
    d = a ^ b
    return bool(d & -d & a)


# --------------------------------------------------------------------------
# Per-digraph subset tables
# --------------------------------------------------------------------------


class Tables:
    """Lazily built subset tables for one digraph (bit ``m`` describes D[m])."""

    def __init__(self, D: Digraph):
        self.D = D
        self.n = D.n
        self._cache: dict = {}

    def _get(self, key, build, clock):
        if key not in self._cache:
            self._cache[key] = build(clock or _Clock(None))
        return self._cache[key]

    def popcounts(self) -> list[int]:
        def build(_):
            pc = [0] * (1 << self.n)
            for m in range(1, 1 << self.n):
                pc[m] = pc[m >> 1] + (m & 1)
            return pc

        return self._get("pc", build, None)

    def acyclic(self, clock=None) -> list[bool]:
        def build(clock):
            inn = self.D.in_masks
            size = 1 << self.n
            acyc = [False] * size
            acyc[0] = True
            for m in range(1, size):
                clock.tick()
                rest = m
                while rest:
                    low = rest & -rest
                    if not inn[low.bit_length() - 1] & m:
                        acyc[m] = acyc[m ^ low]
                        break
                    rest ^= low
            return acyc

        return self._get("acyclic", build, clock)

    def stable(self, clock=None) -> list[bool]:
        def build(clock):
            adj = self.D.adj_masks
            size = 1 << self.n
            st = [False] * size
            st[0] = True
            for m in range(1, size):
                clock.tick()
                low = m & -m
                st[m] = st[m ^ low] and not adj[low.bit_length() - 1] & m
            return st

        return self._get("stable", build, clock)

    def path_starts(self, clock=None) -> list[int]:
        """Mask of vertices from which D[m] has a Hamiltonian path."""

        def build(clock):
            out = self.D.out_masks
            size = 1 << self.n
            starts = [0] * size
            for m in range(1, size):
                clock.tick()
                if m & (m - 1) == 0:
                    starts[m] = m
                    continue
                acc = 0
                rest = m
                while rest:
                    low = rest & -rest
                    if out[low.bit_length() - 1] & starts[m ^ low]:
                        acc |= low
                    rest ^= low
                starts[m] = acc
            return starts

        return self._get("starts", build, clock)

    def traceable(self, clock=None) -> list[bool]:
        return self._get("traceable", lambda c: [s != 0 for s in self.path_starts(c)], clock)

    def cover(self, kind: str, k: Optional[int] = None, clock=None):
        """Minimum-cost partition tables over blocks of the given kind.

        ``kind`` is ``"acyclic"``, ``"stable"`` or ``"path"``; block cost is 1
        when ``k`` is None, else ``min(|block|, k)``.
        """
        blocks = {"acyclic": self.acyclic, "stable": self.stable, "path": self.traceable}[kind]
        return self._get(("cover", kind, k), lambda c: _cover_table(self, blocks(c), k, c), clock)

    def hamiltonian_path(self, m: int) -> Path:
        """Lexicographically smallest Hamiltonian path of D[m] (m traceable)."""
        starts = self.path_starts()
        out = self.D.out_masks
        cand = starts[m]
        if not cand:
            raise ValueError("vertex set is not traceable")
        path = []
        rest = m
        while rest:
            low = cand & -cand
            v = low.bit_length() - 1
            path.append(v)
            rest ^= low
            cand = out[v] & starts[rest] if rest else 0
        return tuple(path)


def _cover_table(tables: Tables, block: list[bool], k: Optional[int], clock: _Clock):
    pc = tables.popcounts()
    size = 1 << tables.n
    value = [0] * size
    choice = [0] * size
    for m in range(1, size):
        low = m & -m
        rest = m ^ low
        best_val = -1
        best_blk = 0
        sub = rest
        while True:
            clock.tick()
            blk = sub | low
            if block[blk]:
                c = (1 if k is None else min(pc[blk], k)) + value[m ^ blk]
                if best_val < 0 or c < best_val:
                    best_val, best_blk = c, blk
                elif c == best_val:
                    if pc[blk] > pc[best_blk] or (pc[blk] == pc[best_blk] and lex_less(blk, best_blk)):
                        best_blk = blk
            if sub == 0:
                break
            sub = (sub - 1) & rest
        value[m] = best_val
        choice[m] = best_blk
    return value, choice


def cover_blocks(choice: list[int], m: int) -> list[int]:
    blocks = []
    while m:
        blocks.append(choice[m])
        m ^= choice[m]
    return blocks


@lru_cache(maxsize=2048)
def tables_for(D: Digraph) -> Tables:
    return Tables(D)


# --------------------------------------------------------------------------
# Maximum vertex sets: branch and bound with hereditary pruning
# --------------------------------------------------------------------------


def _acyclic_mask(inn: tuple[int, ...], m: int) -> bool:
    while m:
        sources = 0
        rest = m
        while rest:
            low = rest & -rest
            if not inn[low.bit_length() - 1] & m:
                sources |= low
            rest ^= low
        if not sources:
            return False
        m &= ~sources
    return True


def _branch_and_bound(order: list[int], feasible_add: Callable[[int, int], bool], clock: _Clock) -> int:
    """Largest feasible subset of ``order`` for a hereditary property.

    Include-first DFS reaches equal-size sets in lexicographic order, so the
    first set of the optimal size is the lexicographically smallest one.
    """
    best = [0, -1]
    count = len(order)

    def search(i: int, chosen: int, size: int) -> None:
        clock.tick()
        if size + (count - i) <= best[1]:
            return
        if i == count:
            best[0], best[1] = chosen, size
            return
        v = order[i]
        if feasible_add(chosen, v):
            search(i + 1, chosen | 1 << v, size + 1)
        search(i + 1, chosen, size)

    search(0, 0, 0)
    return best[0]


def max_induced_acyclic(D: Digraph, among=None, limit: Optional[SolverLimit] = None) -> frozenset:
    """Largest S (within ``among``, default V) with D[S] acyclic."""
    clock = _limit(limit).start(D)
    pool = D.full_mask if among is None else mask_of(among)
    inn = D.in_masks
    best = _branch_and_bound(bit_members(pool), lambda m, v: _acyclic_mask(inn, m | 1 << v), clock)
    return frozenset(bit_members(best))


def max_stable_set(D: Digraph, among=None, limit: Optional[SolverLimit] = None) -> frozenset:
    clock = _limit(limit).start(D)
    pool = D.full_mask if among is None else mask_of(among)
    adj = D.adj_masks
    best = _branch_and_bound(bit_members(pool), lambda m, v: not adj[v] & m, clock)
    return frozenset(bit_members(best))


def all_max_induced_acyclic(D: Digraph, limit: Optional[SolverLimit] = None) -> list[frozenset]:
    """Every maximum induced acyclic vertex set, in lexicographic order."""
    return _all_max(D, "acyclic", limit)


def all_max_stable_sets(D: Digraph, limit: Optional[SolverLimit] = None) -> list[frozenset]:
    return _all_max(D, "stable", limit)


def _all_max(D: Digraph, kind: str, limit):
    clock = _limit(limit).start(D)
    t = tables_for(D)
    ok = t.acyclic(clock) if kind == "acyclic" else t.stable(clock)
    pc = t.popcounts()
    top = max(pc[m] for m in range(1 << D.n) if ok[m])
    found = [tuple(bit_members(m)) for m in range(1 << D.n) if ok[m] and pc[m] == top]
    return [frozenset(s) for s in sorted(found)]


# --------------------------------------------------------------------------
# Minimum partitions
# --------------------------------------------------------------------------


def _min_partition(D: Digraph, kind: str, limit) -> list[int]:
    clock = _limit(limit).start(D)
    if D.n == 0:
        return []
    _, choice = tables_for(D).cover(kind, None, clock)
    return cover_blocks(choice, D.full_mask)


def min_dicoloring(D: Digraph, limit: Optional[SolverLimit] = None) -> tuple[frozenset, ...]:
    """Dicoloring with chi'(D) classes, ordered by smallest vertex."""
    return tuple(frozenset(bit_members(b)) for b in _min_partition(D, "acyclic", limit))


def min_coloring(D: Digraph, limit: Optional[SolverLimit] = None) -> tuple[frozenset, ...]:
    """Proper coloring of U(D) with chi(D) stable classes."""
    return tuple(frozenset(bit_members(b)) for b in _min_partition(D, "stable", limit))


def min_path_partition(D: Digraph, limit: Optional[SolverLimit] = None) -> tuple[Path, ...]:
    blocks = _min_partition(D, "path", limit)
    t = tables_for(D)
    return tuple(t.hamiltonian_path(b) for b in blocks)


def iter_min_partitions(D: Digraph, kind: str, limit: Optional[SolverLimit] = None) -> Iterator[tuple[frozenset, ...]]:
    """All minimum partitions into acyclic (or stable) blocks, as unordered
    families listed by smallest vertex."""
    clock = _limit(limit).start(D)
    t = tables_for(D)
    ok = t.acyclic(clock) if kind == "acyclic" else t.stable(clock)
    if D.n == 0:
        yield ()
        return
    value, _ = t.cover(kind, None, clock)
    target = value[D.full_mask]

    def rec(m: int, left: int, acc: list[int]):
        if m == 0:
            yield tuple(frozenset(bit_members(b)) for b in acc)
            return
        if left == 0 or value[m] > left:
            return
        low = m & -m
        rest = m ^ low
        subs = []
        sub = rest
        while True:
            subs.append(sub | low)
            if sub == 0:
                break
            sub = (sub - 1) & rest
        for blk in reversed(subs):
            clock.tick()
            if ok[blk]:
                acc.append(blk)
                yield from rec(m ^ blk, left - 1, acc)
                acc.pop()

    yield from rec(D.full_mask, target, [])


# --------------------------------------------------------------------------
# Longest path in a general digraph
# --------------------------------------------------------------------------


def _lowest(m: int) -> int:
    return (m & -m).bit_length() - 1


def longest_path(D: Digraph, limit: Optional[SolverLimit] = None) -> Path:
    """Maximum-order path; lexicographically smallest among the longest."""
    clock = _limit(limit).start(D)
    if D.n == 0:
        raise ValueError("empty digraph has no path")
    t = tables_for(D)
    starts = t.path_starts(clock)
    pc = t.popcounts()
    order = max(pc[m] for m in range(1, 1 << D.n) if starts[m])
    pool = [m for m in range(1, 1 << D.n) if starts[m] and pc[m] == order]
    out = D.out_masks
    path: list[int] = []
    allowed = D.full_mask
    while pool:
        v = min(_lowest(starts[m] & allowed) for m in pool if starts[m] & allowed)
        path.append(v)
        bit = 1 << v
        pool = [m ^ bit for m in pool if starts[m] & allowed & bit and m != bit]
        allowed = out[v]
    return tuple(path)
