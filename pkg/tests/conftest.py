import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

from dipaths.digraph import Digraph

sys.path.insert(0, str(Path(__file__).parent))

GOLDEN = Path(__file__).parent / "golden"


def complete(n):
    return Digraph(n, frozenset((u, v) for u in range(n) for v in range(n) if u != v))


def directed_cycle(n):
    return Digraph(n, frozenset((i, (i + 1) % n) for i in range(n)))


@pytest.fixture
def triangle():
    return directed_cycle(3)


@pytest.fixture
def bidirected_k3():
    return complete(3)


@pytest.fixture
def c5():
    return directed_cycle(5)


@pytest.fixture
def digon():
    return Digraph(2, frozenset({(0, 1), (1, 0)}))


@st.composite
def digraphs(draw, min_n=1, max_n=5):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Digraph(n, frozenset(pr for pr, keep in zip(pairs, chosen) if keep))
