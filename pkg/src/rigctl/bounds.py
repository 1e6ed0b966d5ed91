"""Rank upper bounds from maximal d-sparse subgraphs.

For d <= 5 the generic rank never exceeds the size of any maximal d-sparse
subgraph. This module samples maximal subgraphs, estimates or computes
``s_d`` (the smallest such size), searches small supergraphs for ``s_d*``,
and runs the exploratory d >= 6 hunt.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from . import kernels
from .errors import CapabilityError, GraphInputError, PropertyViolation
from .graph import Edge, Graph, canonical, example_k5_flower, random_graph
from .rigidity import RankResult, generic_rank
from .rng import MASK64, Xoshiro256
from .sparsity import (
    MaximalSubgraphResult,
    SparsityParams,
    _forced_sets,
    maximal_sparse_subgraph,
    verify_maximal,
)

log = logging.getLogger(__name__)

EXHAUSTIVE_MAX_EDGES = 20
DEFAULT_SAMPLES = 200
SDSTAR_MAX_CANDIDATES = 200_000


def _require_theorem_range(params: SparsityParams) -> None:
    if params.d > 5:
        raise GraphInputError(f"the rank bound is only a theorem for d <= 5, got d={params.d}")


@dataclass
class BoundReport:
    graph_id: str
    d: int
    rank: RankResult
    samples: list[int]
    violations: list[dict] = field(default_factory=list)
    seeds: list[int] = field(default_factory=list)

    @property
    def min(self) -> int:
        return min(self.samples)

    def to_json(self) -> dict:
        return {"rank": self.rank.rank, "samples": self.samples, "min": self.min, "violations": self.violations}


def upper_bound_check(
    g: Graph,
    params: SparsityParams,
    samples: int = 5,
    seed: int = 0,
    trials: int = 3,
    graph_id: str = "",
) -> BoundReport:
    """Compare the generic rank with ``samples`` random-order maximal d-sparse subgraphs."""
    _require_theorem_range(params)
    rank = generic_rank(g, params, trials, seed)
    sizes, seeds, violations = [], [], []
    for i in range(samples):
        s = (seed + i) & MASK64
        res = maximal_sparse_subgraph(g, params, "random", s)
        sizes.append(res.size)
        seeds.append(s)
        if rank.rank > res.size:
            violations.append({"seed": s, "order": [list(e) for e in res.insertion_order]})
    return BoundReport(graph_id, params.d, rank, sizes, violations, seeds)


# --- s_d --------------------------------------------------------------------------


def _heuristic_orders(g: Graph, samples: int, seed: int, prefer: Sequence[tuple[int, int]]):
    yield "given", None
    if prefer:
        first = [canonical(*e) for e in prefer]
        rest = [e for e in g.edges if e not in set(first)]
        yield first + rest, None
    for i in range(samples):
        yield "random", (seed + i) & MASK64


def _heuristic(g, params, samples, seed, prefer):
    best: MaximalSubgraphResult | None = None
    for order, s in _heuristic_orders(g, samples, seed, prefer):
        res = maximal_sparse_subgraph(g, params, order, s or 0)
        if best is None or res.size < best.size:
            best = res
    assert best is not None
    return best


def _could_block(n, pool: list[Edge], e: Edge, params: SparsityParams) -> bool:
    """Whether some subset of ``pool`` could ever make ``e`` non-addable.

    Needs ``X ⊇ e`` with ``i_pool(X) >= d|X| - l``; a max-flow per forced set.
    """
    d, l = params.d, params.l
    if n < d + 2:
        return False
    eu = [a for a, _ in pool]
    ev = [b for _, b in pool]
    forced = [0] * n
    for dset in _forced_sets(n, d, *e):
        for w in dset:
            forced[w] = 1
        unrouted, _ = kernels.route(n, eu, ev, d, forced, [-1] * len(pool))
        for w in dset:
            forced[w] = 0
        if unrouted - d * len(dset) >= -l:
            return True
    return False


def _exhaustive(g: Graph, params: SparsityParams) -> MaximalSubgraphResult:
    if g.m > EXHAUSTIVE_MAX_EDGES:
        raise CapabilityError(f"exhaustive s_d limited to {EXHAUSTIVE_MAX_EDGES} edges, got {g.m}")
    n, d, l = g.n, params.d, params.l
    edges = list(g.edges)
    best: dict = {"size": g.m + 1, "kept": None}

    def feasible(kept, i, pending):
        pool = kept + edges[i:]
        return all(_could_block(n, pool, e, params) for e in pending)

    def rec(i: int, kept: list[Edge], assign: list[int], pending: list[Edge]) -> None:
        if len(kept) >= best["size"]:
            return
        if i == len(edges):
            eu = [a for a, _ in kept]
            ev = [b for _, b in kept]
            for u, v in pending:
                if kernels.can_add_edge(n, eu, ev, list(assign), d, l, u, v):
                    return
            best["size"], best["kept"] = len(kept), list(kept)
            return
        u, v = edges[i]
        trial = list(assign)
        eu = [a for a, _ in kept]
        ev = [b for _, b in kept]
        if kernels.can_add_edge(n, eu, ev, trial, d, l, u, v):
            rec(i + 1, kept + [(u, v)], trial, pending)
            if feasible(kept, i + 1, pending + [(u, v)]):
                rec(i + 1, kept, assign, pending + [(u, v)])
        elif feasible(kept, i + 1, pending):
            # blocked now, hence blocked in every extension
            rec(i + 1, kept, assign, pending)

    rec(0, [], [], [])
    kept = best["kept"]
    assert kept is not None
    kept_set = set(kept)
    return MaximalSubgraphResult(n, kept, [e for e in edges if e not in kept_set], kept + [e for e in edges if e not in kept_set])


def s_d_estimate(
    g: Graph,
    params: SparsityParams,
    mode: str = "heuristic",
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    prefer: Sequence[tuple[int, int]] = (),
) -> tuple[int, MaximalSubgraphResult]:
    """Smallest maximal d-sparse subgraph found, with a verified witness.

    ``heuristic`` tries the given order, a ``prefer``-first order and
    ``samples`` seeded random orders (an upper bound on ``s_d``);
    ``exhaustive`` is an exact branch and bound for small edge counts.
    """
    if mode == "heuristic":
        best = _heuristic(g, params, samples, seed, prefer)
    elif mode == "exhaustive":
        best = _exhaustive(g, params)
    else:
        raise GraphInputError(f"unknown s_d mode {mode!r}")
    if not verify_maximal(g, best, params):
        raise PropertyViolation("s_d witness failed the maximality check")
    return best.size, best


def s_d_star_search(
    g: Graph,
    params: SparsityParams,
    edge_budget: int = 1,
    samples: int = 20,
    seed: int = 0,
    trials: int = 3,
) -> tuple[int, list[Edge]]:
    """Min of ``s_d(G*)`` over supergraphs adding at most ``edge_budget`` non-edges.

    A supergraph is skipped when its rank already reaches the best value, since
    ``s_d(G*) >= r_d(G*)`` for d <= 5.
    """
    _require_theorem_range(params)
    if not 0 <= edge_budget <= 3:
        raise GraphInputError("edge budget must be between 0 and 3")
    base_rank = generic_rank(g, params, trials, seed).rank
    best, _ = s_d_estimate(g, params, "heuristic", samples, seed)
    best_added: list[Edge] = []
    non_edges = g.non_edges()
    total = sum(comb(len(non_edges), k) for k in range(1, edge_budget + 1))
    if total > SDSTAR_MAX_CANDIDATES:
        raise CapabilityError(f"{total} candidate supergraphs exceed the cap of {SDSTAR_MAX_CANDIDATES}")
    for k in range(1, edge_budget + 1):
        for added in combinations(non_edges, k):
            if best <= base_rank:
                break
            gstar = g.with_edges(added)
            if generic_rank(gstar, params, 1, seed).rank >= best:
                continue
            value, _ = s_d_estimate(gstar, params, "heuristic", samples, seed, prefer=added)
            if value < best:
                best, best_added = value, list(added)
    if best < base_rank:
        raise PropertyViolation(
            f"s_d* estimate {best} below rank {base_rank}", {"added": [list(e) for e in best_added]}
        )
    return best, best_added


# --- flower and hunt -------------------------------------------------------------


def flower_rank_growth_check(
    params: SparsityParams,
    sample_edges: int = 5,
    seed: int = 0,
    edges: Sequence[tuple[int, int]] | None = None,
    trials: int = 3,
) -> dict:
    """Adding any non-edge to the K5 flower raises its rank by one."""
    g = example_k5_flower()
    base = generic_rank(g, params, trials, seed).rank
    if edges is None:
        pool = g.non_edges()
        rng = Xoshiro256(seed)
        rng.shuffle(pool)
        edges = pool[:sample_edges]
    results = []
    for u, v in edges:
        if g.has_edge(u, v):
            raise GraphInputError(f"edge {(u, v)} already in the flower graph")
        r = generic_rank(g.with_edges([(u, v)]), params, trials, seed).rank
        results.append({"edge": [u, v], "rank": r, "pass": r == base + 1})
    return {
        "name": "flower_rank_growth",
        "base_rank": base,
        "results": results,
        "pass": all(x["pass"] for x in results),
    }


def counterexample_hunt(
    d: int,
    n_max: int = 12,
    samples: int = 100,
    seed: int = 0,
    orders: int = 5,
    densities: Sequence[float] = (0.3, 0.5, 0.8),
) -> dict:
    """Random search for graphs whose rank beats a maximal d-sparse subgraph.

    Findings are recorded, never raised: a candidate is re-checked with ten
    rank trials first, and even then only means "worth a closer look".
    """
    params = SparsityParams(d)
    rng = Xoshiro256(seed)
    candidates = []
    checked = 0
    for i in range(samples):
        n = params.d + 2 + rng.below(max(1, n_max - params.d - 1))
        density = densities[rng.below(len(densities))]
        gseed = rng.next_u64()
        g = random_graph(n, density, gseed)
        if g.m == 0:
            continue
        checked += 1
        rank = generic_rank(g, params, 3, gseed).rank
        for j in range(orders):
            oseed = (gseed + j) & MASK64
            res = maximal_sparse_subgraph(g, params, "random", oseed)
            if rank > res.size:
                confirmed = generic_rank(g, params, 10, gseed).rank
                if confirmed > res.size:
                    candidates.append(
                        {
                            "graph": {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]},
                            "rank": confirmed,
                            "size": res.size,
                            "order_seed": oseed,
                        }
                    )
                    log.info("candidate at sample %d: rank %d > %d", i, confirmed, res.size)
                break
    return {"d": d, "n_max": n_max, "samples": samples, "seed": seed, "checked": checked, "candidates": candidates}
