from __future__ import annotations

from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rigctl.errors import GraphInputError
from rigctl.graph import Graph, complete_graph, path_graph
from rigctl.rigidity import (
    DEFAULT_PRIME,
    CoordinateAssignment,
    build_rigidity_matrix,
    generic_rank,
    is_independent,
    is_rigid,
    maxwell_check,
)
from rigctl.sparsity import SparsityParams, is_d_sparse, maximal_sparse_subgraph

from .conftest import dims, graphs

P3 = SparsityParams(3)


def test_single_edge_row():
    coords = CoordinateAssignment(DEFAULT_PRIME, ((2,), (5,)))
    view = build_rigidity_matrix(Graph(2, [(0, 1)]), SparsityParams(1), coords)
    assert view.rows == [[DEFAULT_PRIME - 3, 3]]


def test_rows_carry_opposite_vectors():
    g = complete_graph(3)
    view = build_rigidity_matrix(g, SparsityParams(2), CoordinateAssignment.random(3, 2, 1))
    assert view.shape == (3, 6)
    for (u, v), row in zip(g.edges, view.rows):
        a, b = row[2 * u : 2 * u + 2], row[2 * v : 2 * v + 2]
        assert all((x + y) % DEFAULT_PRIME == 0 for x, y in zip(a, b))
        assert sum(1 for x in row if x) <= 4
    assert build_rigidity_matrix(complete_graph(5), P3, CoordinateAssignment.random(5, 3, 0)).shape == (10, 15)


def test_dimension_mismatch_rejected():
    with pytest.raises(GraphInputError):
        build_rigidity_matrix(complete_graph(3), P3, CoordinateAssignment.random(3, 2, 0))


def test_reference_ranks(double_k5, flower):
    assert generic_rank(complete_graph(5), P3).rank == 9
    assert generic_rank(double_k5[0], P3).rank == 17
    res = generic_rank(flower, P3)
    assert res.rank == 89
    assert [t.rank for t in res.trials] == [89, 89, 89]
    js = res.to_json()
    assert js["prime"] == str(DEFAULT_PRIME) and [t["seed"] for t in js["trials"]] == [0, 1, 2]


def test_independence_examples():
    k5 = complete_graph(5)
    for e in k5.edges:
        assert is_independent(k5, [f for f in k5.edges if f != e], P3)
    assert not is_independent(k5, k5.edges, P3)
    for d in range(1, 6):
        assert is_independent(k5, [], SparsityParams(d))
    with pytest.raises(GraphInputError):
        is_independent(path_graph(3), [(0, 2)], P3)


@pytest.mark.parametrize("d", range(1, 6))
def test_complete_graph_on_d_plus_2_is_a_circuit(d):
    k = complete_graph(d + 2)
    p = SparsityParams(d)
    assert generic_rank(k, p).rank == comb(d + 2, 2) - 1


def test_rigidity_examples(double_k5):
    assert is_rigid(complete_graph(5), P3)
    assert not is_rigid(double_k5[0], P3)
    p1 = SparsityParams(1)
    assert is_rigid(path_graph(6), p1)
    assert not is_rigid(Graph(4, [(0, 1), (2, 3)]), p1)
    assert is_rigid(complete_graph(3), P3) and not is_rigid(path_graph(3), P3)


@given(graphs(max_n=8))
def test_d1_rank_counts_spanning_forest(g):
    assert generic_rank(g, SparsityParams(1)).rank == g.n - g.connected_components()


@given(graphs(max_n=8), st.integers(0, 2**32))
def test_laman_rank_equals_greedy_size(g, seed):
    p = SparsityParams(2)
    assert generic_rank(g, p).rank == maximal_sparse_subgraph(g, p, "random", seed).size


@given(graphs(max_n=8), dims)
def test_rank_never_exceeds_rows_or_target(g, d):
    p = SparsityParams(d)
    r = generic_rank(g, p).rank
    assert r <= g.m
    if g.n >= d:
        assert r <= p.bound(g.n)


@given(graphs(min_n=1, max_n=8), dims, st.data())
def test_maxwell_on_independent_subsets(g, d, data):
    p = SparsityParams(d)
    f = data.draw(st.lists(st.sampled_from(g.edges), unique=True)) if g.m else []
    rep = maxwell_check(g, f, p)
    assert rep["pass"]
    if rep["independent"]:
        assert is_d_sparse(g.edge_subgraph(f), p, "brute").is_sparse


def test_maxwell_examples():
    k5 = complete_graph(5)
    basis = [e for e in k5.edges if e != (0, 1)]
    assert maxwell_check(k5, basis, P3) == {"name": "maxwell", "independent": True, "sparse": True, "pass": True}
    assert maxwell_check(k5, k5.edges, P3)["independent"] is False
    forest = path_graph(5)
    assert maxwell_check(forest, forest.edges, SparsityParams(1))["pass"]


def test_rank_is_seed_stable():
    g = complete_graph(6)
    ranks = {generic_rank(g, P3, seed=s).rank for s in range(5)}
    assert ranks == {12}
