from __future__ import annotations

import json
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rigctl.errors import GraphInputError
from rigctl.graph import (
    Graph,
    complete_graph,
    example_double_k5,
    example_k5_flower,
    induced_edge_count,
    k5_flower_blocks,
    parallel_connection,
    parse_graph,
    path_graph,
    random_graph,
    serialize_graph,
)

from .conftest import graphs


@pytest.mark.parametrize("bad", [[(0, 0)], [(0, 3)], [(0, 1), (1, 0)], [(-1, 2)]])
def test_constructor_rejects_invalid_edges(bad):
    with pytest.raises(GraphInputError):
        Graph(3, bad)


def test_edges_are_canonical_and_keep_order():
    g = Graph(4, [(3, 1), (0, 2)])
    assert g.edges == ((1, 3), (0, 2))
    assert g == Graph(4, [(0, 2), (1, 3)])
    assert g.has_edge(3, 1) and not g.has_edge(0, 1)


def test_induced_edge_count_examples():
    k5 = complete_graph(5)
    assert induced_edge_count(k5, range(5)) == 10
    for pair in combinations(range(5), 2):
        assert induced_edge_count(k5, pair) == 1
    g, (u, v) = example_double_k5()
    assert induced_edge_count(g, (u, v)) == 0
    with pytest.raises(GraphInputError):
        induced_edge_count(k5, [7])


@pytest.mark.parametrize("n,m", [(1, 0), (5, 10), (7, 21)])
def test_complete_graph_sizes(n, m):
    g = complete_graph(n)
    assert (g.n, g.m) == (n, m)


@pytest.mark.parametrize(
    "a,b,n,m",
    [(complete_graph(5), complete_graph(5), 8, 19), (complete_graph(2), complete_graph(2), 2, 1), (complete_graph(4), complete_graph(4), 6, 11)],
)
def test_parallel_connection_counts(a, b, n, m):
    g = parallel_connection(a, b, (0, 1), (0, 1))
    assert (g.n, g.m) == (n, m)


def test_parallel_connection_requires_edges():
    with pytest.raises(GraphInputError):
        parallel_connection(path_graph(3), complete_graph(3), (0, 2), (0, 1))


def test_double_k5_structure():
    g, (u, v) = example_double_k5()
    assert (g.n, g.m) == (8, 18)
    assert induced_edge_count(g, range(5)) == 9
    assert induced_edge_count(g, range(8)) == 3 * 8 - 6
    plus, _ = example_double_k5(with_shared_edge=True)
    assert plus.m == 19 and plus.has_edge(u, v)


def test_flower_structure():
    g = example_k5_flower()
    assert (g.n, g.m) == (35, 100)
    blocks = k5_flower_blocks()
    assert len(blocks) == 11
    assert all(induced_edge_count(g, b) == 10 for b in blocks)


def test_parse_edge_list_and_json():
    assert parse_graph("3 2\n0 1\n1 2") == path_graph(3)
    assert serialize_graph(complete_graph(3), "json") == b'{"n":3,"edges":[[0,1],[0,2],[1,2]]}'
    assert parse_graph(b' {"n":3,"edges":[[0,1]]}') == Graph(3, [(0, 1)])


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("2 1\n0 0", "line 2: self-loop"),
        ("2 1\n0 5", "line 2: vertex index out of range"),
        ("3 2\n0 1\n1 0", "line 3: duplicate edge"),
        ("3 2\n0 1", "announces 2 edges"),
        ("3 x", "line 1: expected integer"),
        ("", "empty input"),
        ('{"n":2,"edges":[[0]]}', "edges[0]"),
        ('{"n":-1,"edges":[]}', "field 'n'"),
        ('{"n":2', "invalid JSON"),
    ],
)
def test_parse_errors_name_location(text, fragment):
    with pytest.raises(GraphInputError, match=fragment.replace("[", r"\[").replace("]", r"\]")):
        parse_graph(text)


def test_comments_and_blank_lines_are_skipped():
    assert parse_graph("# header\n3 1\n\n0 2\n") == Graph(3, [(0, 2)])


@given(graphs(max_n=9), st.sampled_from(["json", "edge-list"]))
def test_serialize_round_trip(g, fmt):
    assert parse_graph(serialize_graph(g, fmt)) == g


def test_dot_output():
    dot = serialize_graph(path_graph(2), "dot").decode()
    assert dot.startswith("graph G {") and "0 -- 1;" in dot


def test_random_graph_is_deterministic():
    a = random_graph(10, 0.5, 42)
    assert a == random_graph(10, 0.5, 42)
    assert random_graph(10, 0.0, 1).m == 0
    assert random_graph(10, 1.0, 1).m == 45
    assert json.loads(serialize_graph(a))["n"] == 10


@given(graphs(max_n=8))
def test_component_count_matches_networkx(g):
    ref = nx.Graph()
    ref.add_nodes_from(range(g.n))
    ref.add_edges_from(g.edges)
    assert g.connected_components() == nx.number_connected_components(ref)
