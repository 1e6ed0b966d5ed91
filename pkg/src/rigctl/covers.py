"""Critical covers, k-hinges, the a_k aggregates and the cover inequalities.

All arithmetic is exact integer arithmetic. Reports are plain dicts, sorted
deterministically, so they serialize straight to JSON.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb

from .errors import GraphInputError, InconsistencyError
from .graph import Edge, Graph
from .sparsity import CriticalComponent, MaximalSubgraphResult, SparsityParams, critical_components


@dataclass(frozen=True)
class Hinge:
    vertices: tuple[int, ...]
    multiplicity: int
    closed: bool

    @property
    def k(self) -> int:
        return len(self.vertices)

    def to_json(self) -> dict:
        return {"k": self.k, "vertices": list(self.vertices), "mult": self.multiplicity, "closed": self.closed}


@dataclass(frozen=True)
class Cover:
    """Family of vertex sets of a graph.

    ``subgraph`` is the sparse subgraph whose critical components produced the
    sets, when there is one; component edge sets are taken from it.
    """

    sets: tuple[frozenset[int], ...]
    graph: Graph
    subgraph: Graph | None = None

    def __post_init__(self):
        for s in self.sets:
            if len(s) < 2:
                raise GraphInputError("every cover set needs at least two vertices")
            if any(not 0 <= v < self.graph.n for v in s):
                raise GraphInputError("cover set has a vertex outside the graph")

    @property
    def base(self) -> Graph:
        return self.subgraph if self.subgraph is not None else self.graph

    def covers_graph(self) -> bool:
        return all(any(u in s and v in s for s in self.sets) for u, v in self.graph.edges)

    @cached_property
    def thinness(self) -> int:
        return max((len(a & b) for a, b in combinations(self.sets, 2)), default=0)

    @cached_property
    def _table(self) -> dict[int, dict[tuple[int, ...], int]]:
        """``k -> {hinge: multiplicity}`` for every k >= 1 that has hinges."""
        cands: set[tuple[int, ...]] = set()
        for a, b in combinations(self.sets, 2):
            inter = sorted(a & b)
            for k in range(1, len(inter) + 1):
                cands.update(combinations(inter, k))
        table: dict[int, dict[tuple[int, ...], int]] = {}
        for u in cands:
            mult = sum(1 for s in self.sets if s.issuperset(u))
            table.setdefault(len(u), {})[u] = mult
        return table

    def multiplicity(self, u: Sequence[int]) -> int:
        """d_X(U): number of sets containing ``u``."""
        return sum(1 for s in self.sets if s.issuperset(u))

    def hinge_map(self, k: int) -> dict[tuple[int, ...], int]:
        if k == 0:
            return {(): len(self.sets)} if len(self.sets) >= 2 else {}
        return self._table.get(k, {})


def critical_cover(
    g: Graph,
    h: MaximalSubgraphResult | Graph,
    params: SparsityParams,
    components: Sequence[CriticalComponent] | None = None,
    check: bool = True,
) -> Cover:
    """The H-critical cover of ``g``: vertex sets of the critical components of ``h``."""
    hg = h.subgraph() if isinstance(h, MaximalSubgraphResult) else h
    if components is None:
        components = critical_components(hg, params)
    cover = Cover(tuple(c.vertex_set for c in components), g, hg)
    if check:
        if not cover.covers_graph():
            raise InconsistencyError("critical cover does not cover the graph")
        if cover.thinness > params.d - 1:
            raise InconsistencyError(f"critical cover is {cover.thinness}-thin, expected <= {params.d - 1}")
        if params.d >= 2 and not all(x.closed for x in hinges(cover, params.d - 1)):
            raise InconsistencyError("critical cover has an open (d-1)-hinge")
    return cover


def _closed(g: Graph, u: Sequence[int]) -> bool:
    return all(g.has_edge(a, b) for a, b in combinations(u, 2))


def hinges(cover: Cover, k: int) -> list[Hinge]:
    """k-hinges with multiplicity and closedness in the cover's graph, sorted by vertex tuple."""
    if k < 0:
        raise GraphInputError("hinge size must be nonnegative")
    return [Hinge(u, m, _closed(cover.graph, u)) for u, m in sorted(cover.hinge_map(k).items())]


@dataclass(frozen=True)
class HingeAggregates:
    a: tuple[int, ...]
    theta: tuple[tuple[int, ...], ...]
    single_set: bool

    def to_json(self) -> dict:
        return {"a": list(self.a), "theta": [list(t) for t in self.theta]}


def aggregates(cover: Cover, params: SparsityParams) -> HingeAggregates:
    """``a[k] = Σ_{U∈Θ_k} (d_X(U) - 1)`` for k = 0..d and per-set hinge counts θ_k."""
    d = params.d
    if len(cover.sets) < 2:
        return HingeAggregates((0,) * (d + 1), tuple((0,) * (d + 1) for _ in cover.sets), True)
    a = tuple(sum(m - 1 for m in cover.hinge_map(k).values()) for k in range(d + 1))
    theta = tuple(
        tuple(sum(1 for u in cover.hinge_map(k) if s.issuperset(u)) for k in range(d + 1)) for s in cover.sets
    )
    return HingeAggregates(a, theta, False)


def two_hinge_edges(cover: Cover, index: int) -> list[Edge]:
    """Edges of component ``index`` whose endpoint pair is a 2-hinge of the cover."""
    if not 0 <= index < len(cover.sets):
        raise GraphInputError(f"component index {index} out of range")
    s = cover.sets[index]
    pairs = cover.hinge_map(2)
    return sorted(e for e in cover.base.edges if e[0] in s and e[1] in s and e in pairs)


# --- inequality checks ------------------------------------------------------------


def _check(name: str, lhs: int, rhs: int, op: str = "<") -> dict:
    ok = lhs < rhs if op == "<" else lhs <= rhs if op == "<=" else lhs == rhs
    return {"name": name, "op": op, "lhs": lhs, "rhs": rhs, "slack": rhs - lhs, "pass": ok}


def _sparse_cover(h: Graph, params: SparsityParams, cover: Cover | None) -> Cover:
    return cover if cover is not None else critical_cover(h, h, params)


def check_prefixedhinge(h: Graph, params: SparsityParams, cover: Cover | None = None) -> dict:
    """For each hinge W (k < d) inside only large components:

    ``(d-k) Σ_{U∈Θ_{k+1}, W⊂U} (d_X(U)-1) - Σ_{U∈Θ_{k+2}, W⊂U} (d_X(U)-1) < C(d+1-k, 2) (d_X(W)-1)``.
    """
    cover = _sparse_cover(h, params, cover)
    d = params.d
    checks, exempt = [], []
    for k in range(d):
        up1 = cover.hinge_map(k + 1)
        up2 = cover.hinge_map(k + 2)
        for w, mult_w in sorted(cover.hinge_map(k).items()):
            wset = frozenset(w)
            if any(len(s) < d + 2 for s in cover.sets if s >= wset):
                exempt.append(list(w))
                continue
            s1 = sum(m - 1 for u, m in up1.items() if wset.issubset(u))
            s2 = sum(m - 1 for u, m in up2.items() if wset.issubset(u))
            c = _check(f"prefixedhinge k={k} W={list(w)}", (d - k) * s1 - s2, comb(d + 1 - k, 2) * (mult_w - 1))
            checks.append(c)
    return {
        "name": "prefixedhinge",
        "checks": checks,
        "exempt": exempt,
        "pass": all(c["pass"] for c in checks),
    }


def check_fixedhinge(h: Graph, params: SparsityParams, cover: Cover | None = None) -> dict:
    """Parts (a), (b), (c) for 0 <= k <= d-2; needs every component to have d+2 or more vertices."""
    cover = _sparse_cover(h, params, cover)
    d = params.d
    applicable = len(cover.sets) >= 2 and all(len(s) >= d + 2 for s in cover.sets)
    checks = []
    if applicable:
        a = list(aggregates(cover, params).a) + [0, 0]
        x1 = len(cover.sets) - 1
        for k in range(d - 1):
            # (a) sums a strict per-hinge bound over Θ_k; with Θ_k empty both sides are 0
            # and the strict form cannot hold, so such checks are flagged
            lhs_a = (d - k) * (k + 1) * a[k + 1] - comb(k + 2, 2) * a[k + 2]
            rhs_a = comb(d + 1 - k, 2) * a[k]
            checks.append({**_check(f"fixedhinge(a) k={k}", lhs_a, rhs_a), "degenerate": not cover.hinge_map(k)})
            checks.append(
                _check(f"fixedhinge(b) k={k}", (d - k) * a[k + 1] - (k + 1) * a[k + 2], comb(d + 1, k + 2) * x1)
            )
            checks.append(
                _check(
                    f"fixedhinge(c) k={k}",
                    d * (d - k) * a[k + 1],
                    (k + 2) * (d - k - 1) * comb(d + 1, k + 2) * x1,
                )
            )
    return {
        "name": "fixedhinge",
        "applicable": applicable,
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
    }


def check_boundedhinges(h: Graph, params: SparsityParams, cover: Cover | None = None) -> dict:
    """Some component has few 1-hinges, few 2-hinges, and few (d-1)-hinges.

    Bounds: θ_1 <= 2d-1 and θ_{d-1} <= d; θ_2 <= (d-2)(d+1)-1 only for d >= 3,
    since it comes from part (c) of the fixed-hinge bounds at k = 1 (and is
    negative at d = 2). Vacuous when a two-vertex component exists.
    """
    cover = _sparse_cover(h, params, cover)
    d = params.d
    vacuous = not cover.sets or any(len(s) == 2 for s in cover.sets)
    checks: list[dict] = []
    skipped: list[str] = []
    if not vacuous:
        theta = aggregates(cover, params).theta
        bounds = [("boundedhinges(a)", 1, 2 * d - 1)]
        if d >= 3:
            bounds.append(("boundedhinges(b)", 2, (d - 2) * (d + 1) - 1))
        else:
            skipped.append("boundedhinges(b): needs d >= 3")
        bounds.append(("boundedhinges(c)", d - 1, d))
        for name, k, bound in bounds:
            checks.append(_check(f"{name} k={k}", min(t[k] for t in theta), bound, "<="))
    return {
        "name": "boundedhinges",
        "vacuous": vacuous,
        "checks": checks,
        "skipped": skipped,
        "pass": all(c["pass"] for c in checks),
    }


def check_cover_structure(cover: Cover, params: SparsityParams) -> dict:
    """Thinness, closed (d-1)-hinges and the absence of d-hinges."""
    d = params.d
    top = hinges(cover, d - 1) if d >= 2 else []
    uncovered = sum(1 for u, v in cover.graph.edges if not any(u in s and v in s for s in cover.sets))
    checks = [
        _check("uncovered edges", uncovered, 0, "=="),
        _check("thinness", cover.thinness, d - 1, "<="),
        _check("open (d-1)-hinges", sum(1 for x in top if not x.closed), 0, "=="),
        _check("d-hinges", len(cover.hinge_map(d)), 0, "=="),
    ]
    return {"name": "cover_structure", "checks": checks, "pass": all(c["pass"] for c in checks)}


def cover_report(cover: Cover, params: SparsityParams, with_checks: bool = True) -> dict:
    agg = aggregates(cover, params)
    all_hinges = [x.to_json() for k in range(1, params.d + 1) for x in hinges(cover, k)]
    checks: list[dict] = []
    if with_checks and cover.subgraph is not None:
        h = cover.subgraph
        if cover.subgraph == cover.graph:
            for rep in (
                check_prefixedhinge(h, params, cover),
                check_fixedhinge(h, params, cover),
                check_boundedhinges(h, params, cover),
            ):
                checks += [{k: c[k] for k in ("name", "lhs", "rhs", "pass")} for c in rep["checks"]]
        checks += [{k: c[k] for k in ("name", "lhs", "rhs", "pass")} for c in check_cover_structure(cover, params)["checks"]]
    return {"thin": cover.thinness, "hinges": all_hinges, **agg.to_json(), "checks": checks}
