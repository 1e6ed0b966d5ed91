"""Property suite behind ``rigctl verify all`` and the acceptance tests.

Each criterion returns a JSON-ready dict with a ``pass`` flag. Timings are kept
out of the payload so that repeated runs with one seed are byte-identical.
"""

from __future__ import annotations

import json
import time
from collections.abc import Callable
from itertools import combinations
from math import comb

import networkx as nx

from .bounds import flower_rank_growth_check, s_d_estimate, s_d_star_search, upper_bound_check
from .covers import (
    check_boundedhinges,
    check_cover_structure,
    check_fixedhinge,
    check_prefixedhinge,
    critical_cover,
)
from .errors import InconsistencyError
from .graph import Graph, complete_graph, example_double_k5, example_k5_flower, random_graph
from .rigidity import generic_rank, is_independent, maxwell_check
from .rng import Xoshiro256
from .sparsity import (
    SparsityParams,
    check_component_intersections,
    critical_components,
    is_d_sparse,
    maximal_sparse_subgraph,
)

DENSITIES = (0.3, 0.5, 0.8)


def _corpus(seed: int, count: int, n_min: int, n_max: int):
    """Deterministic random graphs cycling through the three densities."""
    rng = Xoshiro256(seed)
    for i in range(count):
        n = n_min + rng.below(n_max - n_min + 1)
        gseed = rng.next_u64()
        yield i, gseed, random_graph(n, DENSITIES[i % len(DENSITIES)], gseed)


def double_k5(seed: int = 0) -> dict:
    p = SparsityParams(3)
    g, uv = example_double_k5()
    sparse = is_d_sparse(g, p).is_sparse
    rank = generic_rank(g, p, seed=seed).rank
    sd, _ = s_d_estimate(g, p, samples=20, seed=seed)
    sdstar, added = s_d_star_search(g, p, 1, samples=20, seed=seed)
    ok = sparse and rank == 17 and sd == 18 and sdstar == 17 and added == [uv]
    return {
        "name": "double-K5 example",
        "sparse": sparse,
        "rank": rank,
        "s_d": sd,
        "s_d_star": sdstar,
        "added": [list(e) for e in added],
        "pass": ok,
    }


def k5_flower(seed: int = 0, samples: int = 200, growth_edges: int = 5) -> dict:
    p = SparsityParams(3)
    g = example_k5_flower()
    rank = generic_rank(g, p, seed=seed).rank
    sd, witness = s_d_estimate(g, p, samples=samples, seed=seed)
    growth = flower_rank_growth_check(p, growth_edges, seed)
    ok = rank == 89 and sd == 90 and witness.size == 90 and growth["pass"] and len(growth["results"]) >= 5
    ok = ok and all(r["rank"] == 90 for r in growth["results"])
    return {
        "name": "K5-flower example",
        "rank": rank,
        "s_d": sd,
        "samples": samples,
        "growth_ranks": [r["rank"] for r in growth["results"]],
        "pass": ok,
    }


def theorem4(seed: int = 0, graphs: int = 300, orders: int = 5) -> dict:
    violations = []
    checked = 0
    for i, gseed, g in _corpus(seed, graphs, 4, 10):
        for d in range(1, 6):
            rep = upper_bound_check(g, SparsityParams(d), orders, gseed)
            checked += 1
            for v in rep.violations:
                violations.append({"graph": i, "d": d, "rank": rep.rank.rank, **v})
    return {"name": "rank <= |F| (d <= 5)", "instances": checked, "violations": violations, "pass": not violations}


def circuits(seed: int = 0) -> dict:
    rows = []
    for d in range(1, 6):
        p = SparsityParams(d)
        k = complete_graph(d + 2)
        rank = generic_rank(k, p, seed=seed).rank
        minus_one = [is_independent(k, [f for f in k.edges if f != e], p, seed=seed) for e in k.edges]
        ok = rank == comb(d + 2, 2) - 1 and all(minus_one) and not is_independent(k, k.edges, p, seed=seed)
        rows.append({"d": d, "rank": rank, "expected": comb(d + 2, 2) - 1, "proper_subsets_independent": all(minus_one), "pass": ok})
    return {"name": "K_{d+2} is a circuit", "rows": rows, "pass": all(r["pass"] for r in rows)}


def _atlas(max_n: int) -> list[Graph]:
    out = []
    for a in nx.graph_atlas_g():
        if a.number_of_nodes() <= max_n:
            out.append(Graph(a.number_of_nodes(), a.edges()))
    return out


def oracle_equivalence(seed: int = 0, random_verdicts: int = 200, random_components: int = 100) -> dict:
    disagreements = []
    verdicts = 0
    pool = _atlas(6) + [g for _, _, g in _corpus(seed, random_verdicts, 2, 8)]
    for idx, g in enumerate(pool):
        for d in range(2, 6):
            try:
                is_d_sparse(g, SparsityParams(d), "both")
            except InconsistencyError as exc:
                disagreements.append({"kind": "verdict", "graph": idx, "d": d, "detail": str(exc)})
            verdicts += 1
    comps = 0
    for i, gseed, g in _corpus(seed ^ 0x5EED, random_components, 4, 10):
        d = 2 + i % 4
        p = SparsityParams(d)
        h = maximal_sparse_subgraph(g, p, "random", gseed).subgraph()
        a = {c.vertices for c in critical_components(h, p, "flow")}
        b = {c.vertices for c in critical_components(h, p, "brute")}
        comps += 1
        if a != b:
            disagreements.append({"kind": "components", "graph": i, "d": d})
    return {
        "name": "flow vs brute oracles",
        "verdict_checks": verdicts,
        "component_checks": comps,
        "atlas_graphs": len(_atlas(6)),
        "disagreements": disagreements,
        "pass": not disagreements,
    }


def exactness(seed: int = 0, graphs: int = 100, orders: int = 10) -> dict:
    bad = []
    for i, gseed, g in _corpus(seed, graphs, 2, 10):
        p1 = SparsityParams(1)
        f1 = maximal_sparse_subgraph(g, p1, "random", gseed).size
        r1 = generic_rank(g, p1, seed=gseed).rank
        if not f1 == g.n - g.connected_components() == r1:
            bad.append({"d": 1, "graph": i, "F": f1, "rank": r1})
        p2 = SparsityParams(2)
        r2 = generic_rank(g, p2, seed=gseed).rank
        sizes = {maximal_sparse_subgraph(g, p2, "random", gseed + j).size for j in range(orders)}
        if sizes != {r2}:
            bad.append({"d": 2, "graph": i, "sizes": sorted(sizes), "rank": r2})
    return {"name": "d=1 and d=2 exactness", "graphs": graphs, "violations": bad, "pass": not bad}


def _block_graph(rng: Xoshiro256, d: int, n_max: int = 14) -> Graph:
    """Complete blocks on d+2..d+4 vertices glued tree-like along at most d-1 shared vertices."""
    blocks: list[list[int]] = []
    n = 0
    for _ in range(2 + rng.below(4)):
        size = d + 2 + rng.below(3)
        shared: list[int] = []
        if blocks:
            host = blocks[rng.below(len(blocks))]
            pick = list(host)
            rng.shuffle(pick)
            shared = pick[: rng.below(d)]
        if blocks and n + size - len(shared) > n_max:
            break
        fresh = list(range(n, n + size - len(shared)))
        n += len(fresh)
        blocks.append(sorted(shared + fresh))
    edges = set()
    for b in blocks:
        edges.update(combinations(b, 2))
    return Graph(n, sorted(edges))


def _cover_checks(g: Graph, d: int, oseed: int) -> tuple[dict, bool]:
    p = SparsityParams(d)
    res = maximal_sparse_subgraph(g, p, "random", oseed)
    h = res.subgraph()
    comps = critical_components(h, p)
    g_cover = critical_cover(g, h, p, comps)
    h_cover = critical_cover(h, h, p, comps)
    reports = [
        check_component_intersections(comps, h, p),
        check_cover_structure(g_cover, p),
        check_cover_structure(h_cover, p),
        check_prefixedhinge(h, p, h_cover),
        check_fixedhinge(h, p, h_cover),
        check_boundedhinges(h, p, h_cover),
    ]
    qualifies = reports[4]["applicable"]
    return {"d": d, "reports": reports}, qualifies


def _failed_checks(rep: dict) -> list[dict]:
    out = []
    for r in rep["reports"]:
        if r["pass"]:
            continue
        bad = [c for c in r.get("checks", []) if not c["pass"]] or [{"name": r["name"]}]
        out += [{"d": rep["d"], **c} for c in bad]
    return out


def cover_inequalities(seed: int = 0, qualifying: int = 100, plain: int = 100, max_attempts: int = 5000) -> dict:
    """Every cover check, strictly as stated.

    Failures are split into degenerate ones (a strict bound summed over an empty
    hinge family, so both sides are 0) and all others.
    """
    rng = Xoshiro256(seed)
    failures: list[dict] = []
    found = checked = attempts = 0
    while found < qualifying and attempts < max_attempts:
        attempts += 1
        d = 2 + rng.below(4)
        g = _block_graph(rng, d)
        rep, ok = _cover_checks(g, d, rng.next_u64())
        checked += 1
        found += ok
        failures += _failed_checks(rep)
    for i, gseed, g in _corpus(seed ^ 0xC0FE, plain, 4, 12):
        rep, ok = _cover_checks(g, 1 + i % 5, gseed)
        checked += 1
        found += ok
        failures += _failed_checks(rep)
    degenerate = [f for f in failures if f.get("degenerate")]
    return {
        "name": "cover lemmas and inequalities",
        "instances": checked,
        "qualifying": found,
        "degenerate_failures": len(degenerate),
        "degenerate_examples": degenerate[:5],
        "other_failures": [f for f in failures if not f.get("degenerate")],
        "pass": not failures and found >= qualifying,
    }


def maxwell(seed: int = 0, wanted: int = 100) -> dict:
    rng = Xoshiro256(seed)
    independent = failures = 0
    tried = 0
    while independent < wanted and tried < 20 * wanted:
        tried += 1
        d = 1 + rng.below(5)
        g = random_graph(3 + rng.below(6), DENSITIES[rng.below(3)], rng.next_u64())
        if g.m == 0:
            continue
        edges = list(g.edges)
        rng.shuffle(edges)
        subset = edges[: 1 + rng.below(len(edges))]
        rep = maxwell_check(g, subset, SparsityParams(d), seed=tried)
        if rep["independent"]:
            independent += 1
            failures += not rep["pass"]
    return {"name": "Maxwell necessity", "independent_sets": independent, "failures": failures, "pass": failures == 0 and independent >= wanted}


CRITERIA: dict[int, Callable[..., dict]] = {
    1: double_k5,
    2: k5_flower,
    3: theorem4,
    4: circuits,
    5: oracle_equivalence,
    6: exactness,
    7: cover_inequalities,
    8: maxwell,
}


def canonical_json(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def determinism(seed: int = 0) -> dict:
    runs = [canonical_json([double_k5(seed), theorem4(seed, graphs=12)]) for _ in range(2)]
    return {"name": "determinism", "identical": runs[0] == runs[1], "pass": runs[0] == runs[1]}


CRITERIA[9] = determinism


def run_suite(seed: int = 0, only: list[int] | None = None) -> tuple[dict, dict[int, float]]:
    results, timings = {}, {}
    for cid, fn in CRITERIA.items():
        if only and cid not in only:
            continue
        t0 = time.perf_counter()
        results[str(cid)] = fn(seed)
        timings[cid] = time.perf_counter() - t0
    payload = {"seed": seed, "criteria": results, "pass": all(r["pass"] for r in results.values())}
    return payload, timings
