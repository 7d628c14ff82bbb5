"""Constructive algorithms built on maximum induced acyclic sets.

* :func:`directed_matching_cover` matches one acyclic set into another along
  forward arcs, or exhibits a Hall violator that yields a larger acyclic set.
* :func:`greedy_dicoloring` peels off maximum acyclic sets one at a time.
* :func:`good_path_partition` stitches paths class by class, from the last
  greedy class back to the first, using directed matchings.
* :func:`orthogonal_partition_to_mas` and :func:`orthogonal_path` produce the
  orthogonal witnesses for maximum acyclic sets and minimum dicolorings.
* :func:`linial_primal_certificate` / :func:`linial_dual_certificate` record
  the k-norm bookkeeping that bounds pi_k by alpha'_k and chi'_k by lambda_k.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Union

from dipaths.digraph import Digraph, Path, bit_members, is_acyclic, longest_path_dag, mask_of
from dipaths.knorm import (
    KNormReport,
    alpha_prime_k,
    chi_prime_k,
    k_norm_of_partition,
    k_norm_of_partition_family,
    lambda_k,
    pi_k,
)
from dipaths.solvers import SolverLimit, max_induced_acyclic, min_coloring


class ConstructionError(AssertionError):
    """An internal invariant of a construction failed (indicates a bug or invalid input)."""


@dataclass(frozen=True)
class DirectedMatching:
    arcs: frozenset
    side1: frozenset
    side2: frozenset

    def head_to_tail(self) -> dict[int, int]:
        return {v: u for u, v in self.arcs}

    @property
    def covers_side2(self) -> bool:
        return {v for _, v in self.arcs} == set(self.side2)


@dataclass(frozen=True)
class HallViolator:
    """``S`` in side 2 with fewer forward in-neighbours than members.

    ``improved`` is ``S`` together with the side-1 vertices outside the
    neighbourhood; it is acyclic and strictly larger than side 1.
    """

    S: frozenset
    neighborhood: frozenset
    improved: frozenset


def directed_matching_cover(D: Digraph, T1, T2) -> Union[DirectedMatching, HallViolator]:
    m1, m2 = mask_of(T1), mask_of(T2)
    if m1 & m2:
        raise ValueError("sides overlap")
    if not is_acyclic(D, m1) or not is_acyclic(D, m2):
        raise ValueError("both sides must induce acyclic subdigraphs")
    side1, side2 = bit_members(m1), bit_members(m2)
    # left neighbours of y: tails of arcs x -> y with x in side 1
    nbrs = {y: bit_members(D.in_masks[y] & m1) for y in side2}
    mate_of_x: dict[int, int] = {}

    def augment(y: int, seen: set[int]) -> bool:
        for x in nbrs[y]:
            if x in seen:
                continue
            seen.add(x)
            if x not in mate_of_x or augment(mate_of_x[x], seen):
                mate_of_x[x] = y
                return True
        return False

    unmatched = [y for y in side2 if not augment(y, set())]
    if not unmatched:
        return DirectedMatching(frozenset(mate_of_x.items()), frozenset(side1), frozenset(side2))

    # alternating search from the exposed side-2 vertices
    reached_y = set(unmatched)
    reached_x: set[int] = set()
    queue = deque(unmatched)
    while queue:
        y = queue.popleft()
        for x in nbrs[y]:
            if x not in reached_x:
                reached_x.add(x)
                y2 = mate_of_x[x]
                if y2 not in reached_y:
                    reached_y.add(y2)
                    queue.append(y2)
    S = frozenset(reached_y)
    N = frozenset(reached_x)
    return HallViolator(S, N, S | (frozenset(side1) - N))


@dataclass(frozen=True)
class GreedyDicoloring:
    classes: tuple

    @property
    def t(self) -> int:
        return len(self.classes)

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]


def greedy_dicoloring(D: Digraph, first=None, limit: Optional[SolverLimit] = None) -> GreedyDicoloring:
    """Successive maximum acyclic sets of the shrinking remainder.

    ``first`` seeds the first class with a chosen maximum acyclic set.
    """
    remaining = D.full_mask
    classes = []
    if first is not None:
        seed = mask_of(first)
        if not is_acyclic(D, seed):
            raise ValueError("seed class is not acyclic")
        if len(bit_members(seed)) != len(max_induced_acyclic(D, limit=limit)):
            raise ValueError("seed class is not a maximum acyclic set")
        classes.append(frozenset(bit_members(seed)))
        remaining &= ~seed
    while remaining:
        cls = max_induced_acyclic(D, among=remaining, limit=limit)
        classes.append(cls)
        remaining &= ~mask_of(cls)
    return GreedyDicoloring(tuple(classes))


@dataclass(frozen=True)
class GoodPathPartition:
    paths: tuple
    greedy: GreedyDicoloring
    matchings: tuple = field(default=())  # matchings[i] joins class i to class i+1


def good_path_partition(D: Digraph, G: GreedyDicoloring) -> GoodPathPartition:
    classes = G.classes
    if not classes:
        return GoodPathPartition((), G, ())
    paths: list[Path] = [(v,) for v in sorted(classes[-1])]
    matchings = []
    for i in range(len(classes) - 2, -1, -1):
        initials = frozenset(p[0] for p in paths)
        if initials != classes[i + 1]:
            raise ConstructionError(f"stage {i + 1}: path initials {sorted(initials)} != class {sorted(classes[i + 1])}")
        res = directed_matching_cover(D, classes[i], initials)
        if isinstance(res, HallViolator):
            raise ConstructionError(
                f"class {i + 1} is not maximum: {sorted(res.improved)} is a larger acyclic set"
            )
        tail = res.head_to_tail()
        extended = [(tail[p[0]],) + p for p in paths]
        used = set(tail.values())
        paths = extended + [(x,) for x in sorted(classes[i]) if x not in used]
        matchings.append(res)
    matchings.reverse()
    return GoodPathPartition(tuple(sorted(paths)), G, tuple(matchings))


def orthogonal_partition_to_mas(D: Digraph, T=None, limit: Optional[SolverLimit] = None):
    """Maximum acyclic set T and a path partition meeting T once per path."""
    if T is None:
        T = max_induced_acyclic(D, limit=limit)
    G = greedy_dicoloring(D, first=T, limit=limit)
    return frozenset(T), good_path_partition(D, G).paths


class NotMinimumDicoloring(ValueError):
    """Raised by :func:`orthogonal_path` with a dicoloring using fewer classes."""

    def __init__(self, path: Path, smaller: tuple):
        super().__init__(
            f"longest forward path has order {len(path)}; dicoloring with {len(smaller)} classes exists"
        )
        self.path = path
        self.smaller = smaller


def forward_arc_subdigraph(D: Digraph, classes) -> Digraph:
    """Spanning subdigraph keeping arcs from a lower to a higher class index."""
    index = {}
    for i, cls in enumerate(classes):
        for v in cls:
            index[v] = i
    if sorted(index) != list(D.vertices) or sum(len(c) for c in classes) != D.n:
        raise ValueError("classes do not partition the vertex set")
    return Digraph(D.n, frozenset((u, v) for u, v in D.arcs if index[u] < index[v]))


def orthogonal_path(D: Digraph, classes) -> Path:
    """Path meeting each class of a minimum dicoloring exactly once."""
    classes = [frozenset(c) for c in classes]
    for cls in classes:
        if not is_acyclic(D, cls):
            raise ValueError(f"class {sorted(cls)} is not acyclic")
    forward = forward_arc_subdigraph(D, classes)
    path = longest_path_dag(forward)
    if len(path) == len(classes):
        return path
    smaller = min_coloring(forward)
    for cls in smaller:
        if not is_acyclic(D, cls):
            raise ConstructionError("stable set of the forward subdigraph is not acyclic in D")
    raise NotMinimumDicoloring(path, smaller)


# --------------------------------------------------------------------------
# k-norm chains
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PrimalChain:
    """pi_k <= |P|_k = |S_1 u ... u S_k| <= alpha'_k for a good path partition P."""

    k: int
    good: GoodPathPartition
    norm: int
    union_k: int
    pi_k: KNormReport
    alpha_prime_k: KNormReport
    # bookkeeping for t > k; None otherwise
    long_paths: Optional[int] = None
    size_s_k: Optional[int] = None
    short_cover: Optional[int] = None
    union_before_k: Optional[int] = None

    def violations(self) -> list[str]:
        out = []
        n = sum(len(c) for c in self.good.greedy.classes)
        if not self.pi_k.value <= self.norm:
            out.append(f"pi_k={self.pi_k.value} > |P|_k={self.norm}")
        if self.norm != self.union_k:
            out.append(f"|P|_k={self.norm} != union of first k classes={self.union_k}")
        if not self.union_k <= self.alpha_prime_k.value:
            out.append(f"union={self.union_k} > alpha'_k={self.alpha_prime_k.value}")
        if self.good.greedy.t <= self.k:
            if self.alpha_prime_k.value != n:
                out.append(f"t<=k but alpha'_k={self.alpha_prime_k.value} != |V|={n}")
        else:
            if self.long_paths != self.size_s_k:
                out.append(f"|P_2|={self.long_paths} != |S_k|={self.size_s_k}")
            if self.short_cover != self.union_before_k - (self.k - 1) * self.size_s_k:
                out.append(f"|V(P_1)|={self.short_cover} mismatches class accounting")
            if self.norm != self.short_cover + self.k * self.long_paths:
                out.append("|P|_k != |V(P_1)| + k|P_2|")
        return out


@dataclass(frozen=True)
class DualChain:
    """chi'_k <= |S|_k = kj + |S_{j+1} u ... u S_t| = |V(P')| <= lambda_k."""

    k: int
    good: GoodPathPartition
    pack: tuple
    pack_cover: int
    s_norm: int
    chi_prime_k: KNormReport
    lambda_k: KNormReport
    j: Optional[int] = None  # None when |P| <= k
    tail_union: Optional[int] = None

    def violations(self) -> list[str]:
        out = []
        n = sum(len(c) for c in self.good.greedy.classes)
        if not self.chi_prime_k.value <= self.s_norm:
            out.append(f"chi'_k={self.chi_prime_k.value} > |S|_k={self.s_norm}")
        if not self.pack_cover <= self.lambda_k.value:
            out.append(f"|V(P')|={self.pack_cover} > lambda_k={self.lambda_k.value}")
        if len(self.good.paths) <= self.k:
            if self.lambda_k.value != n or self.pack_cover != n:
                out.append(f"|P|<=k but lambda_k={self.lambda_k.value} != |V|={n}")
            if self.s_norm != n:
                out.append(f"|P|<=k but |S|_k={self.s_norm} != |V|={n}")
        else:
            expected = self.k * self.j + self.tail_union
            if self.s_norm != expected:
                out.append(f"|S|_k={self.s_norm} != kj+tail={expected}")
            if self.pack_cover != expected:
                out.append(f"|V(P')|={self.pack_cover} != kj+tail={expected}")
        return out


def _good_for(D: Digraph, good: Optional[GoodPathPartition], limit) -> GoodPathPartition:
    if good is not None:
        return good
    return good_path_partition(D, greedy_dicoloring(D, limit=limit))


def linial_primal_certificate(
    D: Digraph, k: int, good: Optional[GoodPathPartition] = None, limit: Optional[SolverLimit] = None
) -> PrimalChain:
    good = _good_for(D, good, limit)
    classes = good.greedy.classes
    norm = k_norm_of_partition(good.paths, k)
    union_k = sum(len(c) for c in classes[:k])
    extra = {}
    if good.greedy.t > k:
        short = [p for p in good.paths if len(p) <= k - 1]
        extra = dict(
            long_paths=sum(1 for p in good.paths if len(p) >= k),
            size_s_k=len(classes[k - 1]),
            short_cover=sum(len(p) for p in short),
            union_before_k=sum(len(c) for c in classes[: k - 1]),
        )
    return PrimalChain(
        k=k,
        good=good,
        norm=norm,
        union_k=union_k,
        pi_k=pi_k(D, k, limit),
        alpha_prime_k=alpha_prime_k(D, k, limit),
        **extra,
    )


def linial_dual_certificate(
    D: Digraph, k: int, good: Optional[GoodPathPartition] = None, limit: Optional[SolverLimit] = None
) -> DualChain:
    good = _good_for(D, good, limit)
    classes = good.greedy.classes
    s_norm = k_norm_of_partition_family(classes, k)
    pack = tuple(sorted(good.paths, key=lambda p: (-len(p), p))[:k])
    j = tail = None
    if len(good.paths) > k:
        j = max(i for i, c in enumerate(classes, start=1) if len(c) > k)
        tail = sum(len(c) for c in classes[j:])
    return DualChain(
        k=k,
        good=good,
        pack=pack,
        pack_cover=sum(len(p) for p in pack),
        s_norm=s_norm,
        chi_prime_k=chi_prime_k(D, k, limit),
        lambda_k=lambda_k(D, k, limit),
        j=j,
        tail_union=tail,
    )
