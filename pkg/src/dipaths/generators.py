"""Deterministic instance generators.

Randomness comes from SplitMix64 (Steele, Lea & Flood 2014), implemented
here so that a given ``(model, n, p, seed)`` yields the same digraph on every
platform and Python version.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from dipaths.digraph import Digraph

_MASK64 = (1 << 64) - 1
ALL_DIGRAPHS_MAX_N = 4
MODELS = ("gnp", "tournament", "cycle-orientation", "all-digraphs")


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))


def gnp_digraph(n: int, p: float, seed: int) -> Digraph:
    """Each ordered pair (u, v), u != v, is an arc with probability p.

    Pairs are drawn in row-major order (u outer, v inner).
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = SplitMix64(seed)
    arcs = []
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < p:
                arcs.append((u, v))
    return Digraph(n, frozenset(arcs))


def random_tournament(n: int, seed: int) -> Digraph:
    """One arc per pair u < v; the top bit of each draw picks the direction."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = SplitMix64(seed)
    arcs = []
    for u in range(n):
        for v in range(u + 1, n):
            arcs.append((u, v) if rng.next_u64() >> 63 == 0 else (v, u))
    return Digraph(n, frozenset(arcs))


def cycle_orientation(n: int, mask: int) -> Digraph:
    """Orientation of the cycle v0 v1 ... v(n-1) v0.

    Bit i of ``mask`` clear means v_i -> v_(i+1); set means v_(i+1) -> v_i.
    """
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    if not 0 <= mask < 1 << n:
        raise ValueError(f"mask must lie in [0, 2^{n})")
    arcs = []
    for i in range(n):
        a, b = i, (i + 1) % n
        arcs.append((b, a) if mask >> i & 1 else (a, b))
    return Digraph(n, frozenset(arcs))


def all_digraphs(n: int) -> Iterator[Digraph]:
    """Every labeled digraph on n vertices, by arc-set bitmask.

    Bit i of the code selects the i-th ordered pair in sorted order.
    """
    if n < 0 or n > ALL_DIGRAPHS_MAX_N:
        raise ValueError(f"all_digraphs supports 0 <= n <= {ALL_DIGRAPHS_MAX_N}")
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    for code in range(1 << len(pairs)):
        yield Digraph(n, frozenset(pr for i, pr in enumerate(pairs) if code >> i & 1))


@dataclass(frozen=True)
class GeneratorSpec:
    model: str
    n: int
    p: Optional[float] = None
    seed: int = 0
    index: Optional[int] = None

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if self.model == "gnp" and (self.p is None or not 0.0 <= self.p <= 1.0):
            raise ValueError("gnp needs p in [0, 1]")
        if self.model == "cycle-orientation" and self.n < 3:
            raise ValueError("cycle orientations need n >= 3")
        if self.model == "all-digraphs" and self.n > ALL_DIGRAPHS_MAX_N:
            raise ValueError(f"all-digraphs supports n <= {ALL_DIGRAPHS_MAX_N}")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def build(self) -> Digraph:
        if self.model == "gnp":
            return gnp_digraph(self.n, self.p, self.seed)
        if self.model == "tournament":
            return random_tournament(self.n, self.seed)
        if self.model == "cycle-orientation":
            return cycle_orientation(self.n, self.index or 0)
        if self.index is None:
            raise ValueError("all-digraphs needs an index to build a single instance")
        pairs = [(u, v) for u in range(self.n) for v in range(self.n) if u != v]
        if not 0 <= self.index < 1 << len(pairs):
            raise ValueError("index out of range")
        return Digraph(self.n, frozenset(pr for i, pr in enumerate(pairs) if self.index >> i & 1))

    def describe(self) -> dict:
        out = {"model": self.model, "n": self.n}
        if self.p is not None:
            out["p"] = self.p
        if self.model in ("gnp", "tournament"):
            out["seed"] = self.seed
        if self.index is not None:
            out["index"] = self.index
        return out


def instances(model: str, n: int, count: Optional[int] = None, p: Optional[float] = None, seed: int = 0):
    """Yield (GeneratorSpec, Digraph) pairs.

    Random models use seeds ``seed, seed+1, ...``; the enumerative models
    ignore ``count`` and walk their whole index range.
    """
    if model in ("gnp", "tournament"):
        for i in range(1 if count is None else count):
            spec = GeneratorSpec(model, n, p, seed + i)
            yield spec, spec.build()
    elif model == "cycle-orientation":
        for mask in range(1 << n):
            spec = GeneratorSpec(model, n, index=mask)
            yield spec, spec.build()
    else:
        for idx, D in enumerate(all_digraphs(n)):
            yield GeneratorSpec(model, n, index=idx), D
