import itertools

import pytest
from hypothesis import given, settings

from conftest import digraphs
from dipaths.digraph import (
    Digraph,
    ParseError,
    is_acyclic,
    longest_path_dag,
    parse_edge_list,
    to_dot,
    to_edge_list,
    underlying_graph,
)
from dipaths.generators import all_digraphs
import oracles


def test_parse_triangle(triangle):
    assert parse_edge_list("3 3\n0 1\n1 2\n2 0") == triangle


def test_parse_single_vertex():
    D = parse_edge_list("1 0")
    assert D.n == 1 and not D.arcs


def test_parse_digon_and_comments(digon):
    assert parse_edge_list("# a digon\n2 2\n0 1\n# middle\n1 0\n") == digon


@pytest.mark.parametrize(
    "text, line",
    [
        ("3 1\n0 x", 2),
        ("3 1\n0 3", 2),
        ("3 1\n1 1", 2),
        ("3 2\n0 1\n0 1", 3),
        ("3 1\n0 1 2", 2),
        ("2 1\n0 1\n1 0", 3),
    ],
)
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(ParseError) as err:
        parse_edge_list(text)
    assert err.value.line == line
    assert f"line {line}" in str(err.value)


def test_parse_arc_count_mismatch():
    with pytest.raises(ParseError):
        parse_edge_list("3 2\n0 1")


def test_constructor_rejects_loops_and_range():
    with pytest.raises(ValueError):
        Digraph(2, frozenset({(0, 0)}))
    with pytest.raises(ValueError):
        Digraph(2, frozenset({(0, 2)}))
    with pytest.raises(ValueError):
        Digraph.from_arcs(2, [(0, 1), (0, 1)])


@given(digraphs(max_n=6))
def test_edge_list_round_trip(D):
    text = to_edge_list(D)
    assert parse_edge_list(text) == D
    assert to_edge_list(parse_edge_list(text)) == text


def test_dot_export(triangle):
    dot = to_dot(triangle)
    assert dot.startswith("digraph D {")
    assert "  0 -> 1;" in dot and "  2 -> 0;" in dot


def test_underlying_graph(digon, triangle):
    assert underlying_graph(digon) == {frozenset({0, 1})}
    assert underlying_graph(triangle) == {frozenset(e) for e in [(0, 1), (1, 2), (0, 2)]}
    assert underlying_graph(Digraph(4, frozenset())) == frozenset()


@given(digraphs(max_n=6))
def test_underlying_graph_is_simple(D):
    for e in underlying_graph(D):
        assert len(e) == 2
    for u, v in D.arcs:
        assert frozenset({u, v}) in underlying_graph(D)


def test_is_acyclic_examples(triangle, digon):
    assert not is_acyclic(triangle, {0, 1, 2})
    assert is_acyclic(triangle, {0, 1})
    assert not is_acyclic(digon, {0, 1})
    assert is_acyclic(digon, set())


def test_is_acyclic_matches_cycle_enumeration():
    for n in range(1, 5):
        for D in all_digraphs(n):
            for r in range(n + 1):
                for S in itertools.combinations(range(n), r):
                    assert is_acyclic(D, S) == (not oracles.has_cycle(D, S)), (D, S)


def test_longest_path_dag_examples():
    assert longest_path_dag(Digraph(3, frozenset({(0, 1), (1, 2)}))) == (0, 1, 2)
    assert longest_path_dag(Digraph(4, frozenset())) == (0,)
    assert longest_path_dag(Digraph(3, frozenset({(0, 2), (1, 2)}))) == (0, 2)


def test_longest_path_dag_rejects_cycles(triangle):
    with pytest.raises(ValueError):
        longest_path_dag(triangle)


@settings(max_examples=300)
@given(digraphs(max_n=6))
def test_longest_path_dag_against_brute_force(D):
    # keep only forward arcs of the identity order to get a DAG
    dag = Digraph(D.n, frozenset((u, v) for u, v in D.arcs if u < v))
    paths = oracles.all_paths(dag)
    best = max(len(p) for p in paths)
    assert longest_path_dag(dag) == min(p for p in paths if len(p) == best)
