"""k-norms of witness families and the six Linial-style parameters.

``pi_k``, ``chi_k`` and ``chi_prime_k`` minimise a k-norm over partitions;
``alpha_k``, ``alpha_prime_k`` and ``lambda_k`` maximise the number of vertices
covered by at most k disjoint stable sets, acyclic sets or paths.  All six are
computed exactly from the subset tables in :mod:`dipaths.solvers`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from dipaths.digraph import Digraph, bit_members
from dipaths.solvers import SolverLimit, _limit, cover_blocks, lex_less, tables_for


@dataclass(frozen=True)
class KNormReport:
    """Optimal value of a k-parameter together with a family attaining it."""

    name: str
    k: int
    value: int
    witness: tuple

    def recomputed(self) -> int:
        if self.name in ("pi", "chi", "chi_prime"):
            if self.name == "pi":
                return k_norm_of_partition(self.witness, self.k)
            return k_norm_of_partition_family(self.witness, self.k)
        return sum(len(member) for member in self.witness)


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")


def k_norm_of_partition(paths: Iterable[Sequence[int]], k: int) -> int:
    _check_k(k)
    return sum(min(len(p), k) for p in paths)


def k_norm_of_partition_family(classes: Iterable[Iterable[int]], k: int) -> int:
    _check_k(k)
    return sum(min(len(set(c)), k) for c in classes)


def _min_norm(D: Digraph, kind: str, k: int, limit):
    _check_k(k)
    clock = _limit(limit).start(D)
    if D.n == 0:
        return 0, []
    value, choice = tables_for(D).cover(kind, k, clock)
    return value[D.full_mask], cover_blocks(choice, D.full_mask)


def pi_k(D: Digraph, k: int, limit: Optional[SolverLimit] = None) -> KNormReport:
    val, blocks = _min_norm(D, "path", k, limit)
    t = tables_for(D)
    return KNormReport("pi", k, val, tuple(t.hamiltonian_path(b) for b in blocks))


def chi_k(D: Digraph, k: int, limit: Optional[SolverLimit] = None) -> KNormReport:
    val, blocks = _min_norm(D, "stable", k, limit)
    return KNormReport("chi", k, val, tuple(frozenset(bit_members(b)) for b in blocks))


def chi_prime_k(D: Digraph, k: int, limit: Optional[SolverLimit] = None) -> KNormReport:
    val, blocks = _min_norm(D, "acyclic", k, limit)
    return KNormReport("chi_prime", k, val, tuple(frozenset(bit_members(b)) for b in blocks))


def _max_cover(D: Digraph, kind: str, k: int, limit):
    """Largest X (lex-smallest on ties) splitting into <= k blocks of ``kind``."""
    _check_k(k)
    clock = _limit(limit).start(D)
    t = tables_for(D)
    value, choice = t.cover(kind, None, clock)
    pc = t.popcounts()
    best = 0
    for m in range(1, 1 << D.n):
        if value[m] <= k and (pc[m] > pc[best] or (pc[m] == pc[best] and lex_less(m, best))):
            best = m
    return pc[best], cover_blocks(choice, best)


def alpha_k(D: Digraph, k: int, limit: Optional[SolverLimit] = None) -> KNormReport:
    val, blocks = _max_cover(D, "stable", k, limit)
    return KNormReport("alpha", k, val, tuple(frozenset(bit_members(b)) for b in blocks))


def alpha_prime_k(D: Digraph, k: int, limit: Optional[SolverLimit] = None) -> KNormReport:
    val, blocks = _max_cover(D, "acyclic", k, limit)
    return KNormReport("alpha_prime", k, val, tuple(frozenset(bit_members(b)) for b in blocks))


def lambda_k(D: Digraph, k: int, limit: Optional[SolverLimit] = None) -> KNormReport:
    val, blocks = _max_cover(D, "path", k, limit)
    t = tables_for(D)
    return KNormReport("lambda", k, val, tuple(t.hamiltonian_path(b) for b in blocks))


PARAMETERS = {
    "pi": pi_k,
    "alpha": alpha_k,
    "alpha_prime": alpha_prime_k,
    "chi": chi_k,
    "chi_prime": chi_prime_k,
    "lambda": lambda_k,
}
