from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rigctl.covers import (
    Cover,
    aggregates,
    check_boundedhinges,
    check_cover_structure,
    check_fixedhinge,
    check_prefixedhinge,
    cover_report,
    critical_cover,
    hinges,
    two_hinge_edges,
)
from rigctl.errors import GraphInputError, InconsistencyError
from rigctl.graph import Graph, complete_graph
from rigctl.sparsity import SparsityParams, maximal_sparse_subgraph

from .conftest import graphs

P3 = SparsityParams(3)


@pytest.fixture(scope="module")
def two_block(double_k5_plus):
    g, uv = double_k5_plus
    res = maximal_sparse_subgraph(g, P3, [uv] + [e for e in g.edges if e != uv])
    h = res.subgraph()
    return g, h, critical_cover(h, h, P3), uv


def test_critical_cover_examples(double_k5_plus, double_k5, two_block):
    g, uv = double_k5_plus
    res = maximal_sparse_subgraph(g, P3, [uv] + [e for e in g.edges if e != uv])
    cover = critical_cover(g, res, P3)
    assert sorted(len(s) for s in cover.sets) == [5, 5]
    assert cover.covers_graph() and cover.thinness == 2
    g0, _ = double_k5
    assert [len(s) for s in critical_cover(g0, g0, P3).sets] == [8]
    edge = Graph(2, [(0, 1)])
    assert [sorted(s) for s in critical_cover(edge, edge, P3).sets] == [[0, 1]]


def test_hinge_examples(two_block):
    _, _, cover, (u, v) = two_block
    assert [(x.vertices, x.multiplicity) for x in hinges(cover, 1)] == [((u,), 2), ((v,), 2)]
    assert [(x.vertices, x.multiplicity, x.closed) for x in hinges(cover, 2)] == [((u, v), 2, True)]
    assert hinges(cover, 3) == []
    single = Cover((frozenset(range(5)),), complete_graph(5))
    assert all(hinges(single, k) == [] for k in range(4))
    with pytest.raises(GraphInputError):
        hinges(cover, -1)


def test_aggregate_examples(two_block):
    _, _, cover, _ = two_block
    agg = aggregates(cover, P3)
    assert agg.a == (1, 2, 1, 0)
    assert all(t[1] == 2 and t[2] == 1 for t in agg.theta)
    single = aggregates(Cover((frozenset(range(5)),), complete_graph(5)), P3)
    assert single.single_set and single.a == (0, 0, 0, 0)


def _by_name(report):
    return {c["name"]: c for c in report["checks"]}


def test_prefixedhinge_examples(two_block):
    _, h, cover, (u, v) = two_block
    rep = check_prefixedhinge(h, P3, cover)
    checks = _by_name(rep)
    assert rep["pass"] and not rep["exempt"]
    assert (checks["prefixedhinge k=0 W=[]"]["lhs"], checks["prefixedhinge k=0 W=[]"]["rhs"]) == (5, 6)
    assert (checks[f"prefixedhinge k=1 W=[{u}]"]["lhs"], checks[f"prefixedhinge k=1 W=[{u}]"]["rhs"]) == (2, 3)


def test_prefixedhinge_exempts_small_components():
    # a K5 minus an edge with a pendant edge at vertex 0: the pendant is a size-2 component
    k5 = [e for e in complete_graph(5).edges if e != (3, 4)]
    h = Graph(6, k5 + [(0, 5)])
    rep = check_prefixedhinge(h, P3)
    assert [0] in rep["exempt"] and rep["pass"]
    assert not check_fixedhinge(h, P3)["applicable"]
    assert check_boundedhinges(h, P3)["vacuous"]


def test_fixedhinge_examples(two_block):
    _, h, cover, _ = two_block
    rep = check_fixedhinge(h, P3, cover)
    checks = _by_name(rep)
    assert rep["applicable"] and rep["pass"]
    assert (checks["fixedhinge(a) k=0"]["lhs"], checks["fixedhinge(a) k=0"]["rhs"]) == (5, 6)
    assert (checks["fixedhinge(c) k=1"]["lhs"], checks["fixedhinge(c) k=1"]["rhs"]) == (6, 12)


def test_fixedhinge_empty_hinge_family_is_not_strict():
    # two vertex-disjoint tight components: Θ_1 is empty, so (a) at k=1 reads 0 < 0
    k5 = [e for e in complete_graph(5).edges if e != (3, 4)]
    h = Graph(10, k5 + [(u + 5, v + 5) for u, v in k5])
    checks = _by_name(check_fixedhinge(h, P3))
    bad = checks["fixedhinge(a) k=1"]
    assert bad["degenerate"] and (bad["lhs"], bad["rhs"], bad["pass"]) == (0, 0, False)
    assert not checks["fixedhinge(a) k=0"]["degenerate"] and checks["fixedhinge(a) k=0"]["pass"]
    assert all(c["pass"] for name, c in checks.items() if not name.startswith("fixedhinge(a)"))


def test_boundedhinges_examples(two_block):
    _, h, cover, _ = two_block
    rep = check_boundedhinges(h, P3, cover)
    assert rep["pass"] and not rep["vacuous"]
    assert [(c["lhs"], c["rhs"]) for c in rep["checks"]] == [(2, 5), (1, 3), (1, 3)]
    single = Cover((frozenset(range(5)),), complete_graph(5), complete_graph(5))
    assert check_boundedhinges(complete_graph(5), P3, single)["pass"]


def test_two_hinge_edges_examples(two_block):
    _, _, cover, uv = two_block
    assert two_hinge_edges(cover, 0) == [uv] and two_hinge_edges(cover, 1) == [uv]
    single = Cover((frozenset(range(5)),), complete_graph(5))
    assert two_hinge_edges(single, 0) == []
    with pytest.raises(GraphInputError):
        two_hinge_edges(single, 3)


def test_three_blocks_sharing_edges_pairwise():
    blocks = [(0, 1, 2, 3, 6), (0, 1, 4, 5, 7), (2, 3, 4, 5, 8)]
    g = Graph(9, sorted({e for b in blocks for e in combinations(b, 2)}))
    cover = Cover(tuple(frozenset(b) for b in blocks), g)
    assert cover.covers_graph() and cover.thinness == 2
    assert [two_hinge_edges(cover, i) for i in range(3)] == [[(0, 1), (2, 3)], [(0, 1), (4, 5)], [(2, 3), (4, 5)]]


def test_critical_cover_flags_inconsistency(two_block):
    g, h, _, _ = two_block
    with pytest.raises(InconsistencyError):
        critical_cover(complete_graph(8), h, P3)


def test_report_schema(two_block):
    _, _, cover, _ = two_block
    rep = cover_report(cover, P3)
    assert set(rep) == {"thin", "hinges", "a", "theta", "checks"}
    assert rep["a"] == [1, 2, 1, 0] and rep["thin"] == 2
    assert all(set(c) == {"name", "lhs", "rhs", "pass"} and c["pass"] for c in rep["checks"])
    assert all(set(x) == {"k", "vertices", "mult", "closed"} for x in rep["hinges"])


@given(graphs(min_n=2, max_n=11), st.integers(1, 5), st.integers(0, 2**32))
def test_cover_lemmas_on_random_graphs(g, d, seed):
    p = SparsityParams(d)
    res = maximal_sparse_subgraph(g, p, "random", seed)
    h = res.subgraph()
    g_cover = critical_cover(g, res, p)
    h_cover = critical_cover(h, h, p)
    assert check_cover_structure(g_cover, p)["pass"]
    assert aggregates(h_cover, p).a[d] == 0
    assert check_prefixedhinge(h, p, h_cover)["pass"]
    assert check_boundedhinges(h, p, h_cover)["pass"]
    # the only strict failures allowed are sums over an empty hinge family (0 < 0)
    for c in check_fixedhinge(h, p, h_cover)["checks"]:
        assert c["pass"] or (c.get("degenerate") and c["lhs"] == c["rhs"] == 0), c
    # reported hinges recompute from scratch
    for k in range(d + 1):
        for x in hinges(g_cover, k):
            mult = sum(1 for s in g_cover.sets if s.issuperset(x.vertices))
            assert x.multiplicity == mult >= 2
            assert x.closed == all(g.has_edge(a, b) for a, b in combinations(x.vertices, 2))
