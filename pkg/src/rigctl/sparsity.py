"""d-sparsity: verdicts, tight sets, greedy maximal subgraphs, critical components.

A graph is d-sparse when every vertex set ``X`` with ``|X| >= d`` induces at
most ``d|X| - C(d+1, 2)`` edges. Two backends answer every question:

``flow``
    For a forced set ``D`` of exactly ``d`` vertices, ``max_{S ⊇ D} i(S) - d|S|``
    is a min cut in the edge/vertex network of :mod:`rigctl._pykernels`. Sets
    with ``d`` or ``d + 1`` vertices never violate in a simple graph, so
    sweeping all ``D`` decides sparsity exactly.
``brute``
    Enumerates vertex subsets as bitmasks (capped).

Components via the flow backend: the maximizers of the supermodular function
``i(S) - d|S|`` over ``S ⊇ D`` form a lattice, so there is a unique maximal one,
read off the residual network. If ``U`` is a critical component with
``|U| >= d + 2`` then ``U`` spans an edge ``uv`` and any ``D`` with
``{u, v} ⊆ D ⊆ U``: every tight set containing ``D`` unions with ``U`` into a
tight set (they meet in at least ``d`` vertices), so the maximal maximizer for
``D`` is exactly ``U``. Sweeping every edge and every such ``D`` therefore
finds every component of size ``>= d + 2``.
"""

from __future__ import annotations

import warnings
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from . import kernels
from .errors import CapabilityError, GraphInputError, InconsistencyError, PropertyViolation
from .graph import Edge, Graph, canonical, check_vertices, induced_edge_count
from .rng import Xoshiro256

BRUTE_SPARSITY_MAX_N = 20
BRUTE_TIGHT_MAX_N = 16


@dataclass(frozen=True)
class SparsityParams:
    d: int

    def __post_init__(self):
        if not 1 <= self.d <= 8:
            raise GraphInputError(f"dimension must be in 1..8, got {self.d}")

    @property
    def l(self) -> int:
        return self.d * (self.d + 1) // 2

    @property
    def experimental(self) -> bool:
        """True for d >= 6, where the rank bound is not a theorem."""
        return self.d >= 6

    def bound(self, x: int) -> int:
        return self.d * x - self.l


def params_for(d: int | SparsityParams) -> SparsityParams:
    p = d if isinstance(d, SparsityParams) else SparsityParams(d)
    if p.experimental:
        warnings.warn(f"d={p.d}: the rank upper bound is only proved for d <= 5", stacklevel=3)
    return p


def sparsity_bound(params: SparsityParams, x: int) -> int:
    return params.bound(x)


@dataclass(frozen=True)
class SparsityVerdict:
    is_sparse: bool
    witness: frozenset[int] | None = None

    def to_json(self) -> dict:
        return {"sparse": self.is_sparse, "witness": None if self.witness is None else sorted(self.witness)}


@dataclass(frozen=True)
class TightSet:
    vertices: frozenset[int]
    excess: int = 0


@dataclass(frozen=True)
class CriticalComponent:
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": len(self.edges)}


@dataclass
class MaximalSubgraphResult:
    n: int
    kept_edges: list[Edge]
    rejected_edges: list[Edge]
    insertion_order: list[Edge]
    seed: int | None = None
    orientation: list[int] = field(default_factory=list, repr=False)

    @property
    def size(self) -> int:
        return len(self.kept_edges)

    def subgraph(self) -> Graph:
        return Graph(self.n, self.kept_edges)


# --- flow primitives ----------------------------------------------------------


def _edge_arrays(g: Graph) -> tuple[list[int], list[int]]:
    return [u for u, _ in g.edges], [v for _, v in g.edges]


def orientation(g: Graph, d: int) -> tuple[list[int], int]:
    """Assign each edge to an endpoint with at most ``d`` edges per vertex; return ``(assign, unrouted)``."""
    eu, ev = _edge_arrays(g)
    assign = [-1] * g.m
    unrouted, _ = kernels.route(g.n, eu, ev, d, [0] * g.n, assign)
    return assign, unrouted


def _max_excess(g, eu, ev, forced_set, d, base):
    forced = [0] * g.n
    for w in forced_set:
        forced[w] = 1
    trial = list(base) if base is not None else [-1] * g.m
    unrouted, blocked = kernels.route(g.n, eu, ev, d, forced, trial)
    return unrouted - d * len(forced_set), frozenset(forced_set).union(blocked)


def max_excess_over(g: Graph, forced: Iterable[int], params: SparsityParams) -> tuple[int, frozenset[int]]:
    """Max of ``i(S) - d|S|`` over ``S ⊇ forced`` and the inclusion-maximal maximizer.

    Min cut ``C`` of the network gives ``max = |E| - C - d|forced|``; the
    maximizer is ``forced`` plus every vertex whose sink node is unreachable in
    the residual network.
    """
    fs = check_vertices(g, forced)
    d = params.d
    if g.n < d:
        if fs != frozenset(range(g.n)):
            raise GraphInputError(f"with |V| = {g.n} < d the forced set must be all of V")
        return g.m - d * g.n, fs
    if len(fs) != d:
        raise GraphInputError(f"forced set must have exactly d={d} vertices, got {len(fs)}")
    eu, ev = _edge_arrays(g)
    return _max_excess(g, eu, ev, fs, d, None)


# --- brute force --------------------------------------------------------------


def _mask_counts(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """``i(X)`` and ``|X|`` for every bitmask ``X`` of the vertex set."""
    counts = np.zeros(1, dtype=np.int32)
    lower_adj = [0] * g.n
    for u, v in g.edges:
        lower_adj[v] |= 1 << u
    for b in range(g.n):
        low = np.arange(1 << b, dtype=np.int64)
        extra = np.bitwise_count(low & lower_adj[b]).astype(np.int32)
        counts = np.concatenate([counts, counts + extra])
    sizes = np.bitwise_count(np.arange(1 << g.n, dtype=np.int64)).astype(np.int32)
    return counts, sizes


def _mask_to_set(mask: int) -> frozenset[int]:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


def _brute_verdict(g: Graph, params: SparsityParams) -> SparsityVerdict:
    if g.n > BRUTE_SPARSITY_MAX_N:
        raise CapabilityError(f"brute sparsity limited to {BRUTE_SPARSITY_MAX_N} vertices, got {g.n}")
    counts, sizes = _mask_counts(g)
    excess = counts - (params.d * sizes - params.l)
    excess[sizes < params.d] = np.iinfo(np.int32).min
    top = int(excess.max()) if excess.size else 0
    if top <= 0:
        return SparsityVerdict(True)
    # largest violation, then largest set, then smallest mask
    cand = np.flatnonzero(excess == top)
    best = cand[np.argmax(sizes[cand])]
    return SparsityVerdict(False, _mask_to_set(int(best)))


def tight_sets_brute(g: Graph, params: SparsityParams, min_size: int | None = None) -> list[TightSet]:
    """All vertex sets with ``i(X) = d|X| - l`` and at least ``min_size`` (default ``d + 2``) vertices."""
    if g.n > BRUTE_TIGHT_MAX_N:
        raise CapabilityError(f"tight-set enumeration limited to {BRUTE_TIGHT_MAX_N} vertices, got {g.n}")
    lo = params.d + 2 if min_size is None else min_size
    counts, sizes = _mask_counts(g)
    hits = np.flatnonzero((counts == params.d * sizes - params.l) & (sizes >= lo))
    return [TightSet(_mask_to_set(int(x))) for x in hits]


# --- verdicts -----------------------------------------------------------------


def _flow_verdict(g: Graph, params: SparsityParams) -> SparsityVerdict:
    d, l = params.d, params.l
    if g.n < d + 2:
        return SparsityVerdict(True)
    eu, ev = _edge_arrays(g)
    base, _ = orientation(g, d)
    for dset in combinations(range(g.n), d):
        value, s = _max_excess(g, eu, ev, dset, d, base)
        if value > -l:
            if induced_edge_count(g, s) - params.bound(len(s)) != value + l:
                raise InconsistencyError(f"flow witness {sorted(s)} does not recompute to {value}")
            return SparsityVerdict(False, s)
    return SparsityVerdict(True)


def is_d_sparse(g: Graph, params: SparsityParams, backend: str = "flow") -> SparsityVerdict:
    if backend == "flow":
        return _flow_verdict(g, params)
    if backend == "brute":
        return _brute_verdict(g, params)
    if backend == "both":
        a, b = _flow_verdict(g, params), _brute_verdict(g, params)
        if a.is_sparse != b.is_sparse:
            raise InconsistencyError(
                f"backends disagree on {g!r} at d={params.d}: flow={a.to_json()} brute={b.to_json()}"
            )
        return a
    raise GraphInputError(f"unknown backend {backend!r}")


def _forced_sets(n: int, d: int, u: int, v: int):
    if d == 1:
        yield (u,)
        return
    others = [w for w in range(n) if w != u and w != v]
    for rest in combinations(others, d - 2):
        yield (u, v) + rest


def can_add_edge(h: Graph, e: tuple[int, int], params: SparsityParams, check: bool = False) -> bool:
    """Whether ``h + e`` is still d-sparse, for d-sparse ``h``.

    Any violating set of ``h + e`` contains both endpoints, so only forced sets
    through ``e`` are examined.
    """
    u, v = canonical(*e)
    check_vertices(h, (u, v))
    if h.has_edge(u, v):
        raise GraphInputError(f"edge {(u, v)} already present")
    if check and not is_d_sparse(h, params).is_sparse:
        raise PropertyViolation("can_add_edge precondition: graph is not d-sparse")
    assign, unrouted = orientation(h, params.d)
    if unrouted:
        raise PropertyViolation("can_add_edge precondition: graph is not d-sparse")
    eu, ev = _edge_arrays(h)
    return kernels.can_add_edge(h.n, eu, ev, assign, params.d, params.l, u, v)


def random_order(edges: Sequence[Edge], seed: int) -> list[Edge]:
    order = list(edges)
    Xoshiro256(seed).shuffle(order)
    return order


def maximal_sparse_subgraph(
    g: Graph,
    params: SparsityParams,
    order: str | Sequence[tuple[int, int]] = "given",
    seed: int = 0,
) -> MaximalSubgraphResult:
    """Greedy maximal d-sparse subgraph.

    ``order`` is ``"given"`` (edge order of ``g``), ``"random"`` (shuffled with
    ``seed``) or an explicit permutation of the edges.
    """
    if order == "given":
        seq = list(g.edges)
        used_seed = None
    elif order == "random":
        seq = random_order(g.edges, seed)
        used_seed = seed
    else:
        seq = [canonical(*e) for e in order]  # type: ignore[union-attr]
        if sorted(seq) != g.sorted_edges():
            raise GraphInputError("explicit order must be a permutation of the graph's edges")
        used_seed = None
    d, l = params.d, params.l
    eu: list[int] = []
    ev: list[int] = []
    assign: list[int] = []
    kept: list[Edge] = []
    rejected: list[Edge] = []
    for u, v in seq:
        if kernels.can_add_edge(g.n, eu, ev, assign, d, l, u, v):
            eu.append(u)
            ev.append(v)
            kept.append((u, v))
        else:
            rejected.append((u, v))
    return MaximalSubgraphResult(g.n, kept, rejected, seq, used_seed, assign)


def verify_maximal(g: Graph, result: MaximalSubgraphResult, params: SparsityParams, backend: str = "flow") -> bool:
    """Independent check: kept edges are sparse and every rejected edge breaks sparsity."""
    h = result.subgraph()
    if sorted(result.kept_edges + result.rejected_edges) != g.sorted_edges():
        return False
    if not is_d_sparse(h, params, backend).is_sparse:
        return False
    return all(not is_d_sparse(h.with_edges([e]), params, backend).is_sparse for e in result.rejected_edges)


# --- components -----------------------------------------------------------------


def _inclusion_maximal(sets: Iterable[frozenset[int]]) -> list[frozenset[int]]:
    uniq = sorted(set(sets), key=lambda s: (-len(s), sorted(s)))
    out: list[frozenset[int]] = []
    for s in uniq:
        if not any(s <= t for t in out):
            out.append(s)
    return out


def _assemble(h: Graph, big: list[frozenset[int]]) -> list[CriticalComponent]:
    comps = []
    for s in big:
        comps.append(CriticalComponent(tuple(sorted(s)), tuple(sorted(e for e in h.edges if e[0] in s and e[1] in s))))
    for e in h.sorted_edges():
        if not any(e[0] in s and e[1] in s for s in big):
            comps.append(CriticalComponent(e, (e,)))
    comps.sort(key=lambda c: c.vertices)
    return comps


def _components_flow(h: Graph, params: SparsityParams) -> list[CriticalComponent]:
    d, l = params.d, params.l
    base, unrouted = orientation(h, d)
    if unrouted:
        raise PropertyViolation("critical_components precondition: graph is not d-sparse")
    eu, ev = _edge_arrays(h)
    found: list[frozenset[int]] = []
    if h.n >= d + 2:
        for u, v in h.edges:
            for dset in _forced_sets(h.n, d, u, v):
                if any(s.issuperset(dset) for s in found):
                    continue
                value, s = _max_excess(h, eu, ev, dset, d, base)
                if value > -l:
                    raise PropertyViolation("critical_components precondition: graph is not d-sparse")
                if value == -l and len(s) >= d + 2:
                    found.append(s)
    return _assemble(h, _inclusion_maximal(found))


def _components_brute(h: Graph, params: SparsityParams) -> list[CriticalComponent]:
    if not _brute_verdict(h, params).is_sparse:
        raise PropertyViolation("critical_components precondition: graph is not d-sparse")
    tight = tight_sets_brute(h, params)
    return _assemble(h, _inclusion_maximal(t.vertices for t in tight))


def critical_components(h: Graph, params: SparsityParams, backend: str = "flow") -> list[CriticalComponent]:
    """The d-critical components of a d-sparse graph, sorted by vertex tuple."""
    if backend == "flow":
        return _components_flow(h, params)
    if backend == "brute":
        return _components_brute(h, params)
    raise GraphInputError(f"unknown backend {backend!r}")


def check_component_intersections(
    components: Sequence[CriticalComponent], g: Graph, params: SparsityParams
) -> dict:
    """Pairwise intersections of components: at most d-1 vertices, and C(d-1, 2) induced edges at d-1."""
    d = params.d
    pairs = []
    ok = True
    for i, j in combinations(range(len(components)), 2):
        inter = components[i].vertex_set & components[j].vertex_set
        size = len(inter)
        induced = induced_edge_count(g, inter)
        passed = size <= d - 1 and (size < d - 1 or induced == comb(d - 1, 2))
        ok &= passed
        pairs.append({"i": i, "j": j, "size": size, "induced": induced, "pass": passed})
    return {"name": "component_intersections", "pairs": pairs, "pass": ok}
