"""Rigidity matrices at random points over GF(p) and their ranks.

Rank at a random specialization never exceeds the generic rank, so every
result is a certified lower bound. By Schwartz-Zippel a trial undercounts with
probability at most ``rank / p`` (a maximal nonzero minor is a polynomial of
degree ``rank`` in the coordinates); with ``p = 2**61 - 1`` that is negligible.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from . import kernels
from .errors import GraphInputError
from .graph import Edge, Graph, canonical
from .rng import MASK64, Xoshiro256
from .sparsity import SparsityParams, is_d_sparse

log = logging.getLogger(__name__)

DEFAULT_PRIME = (1 << 61) - 1
DEFAULT_TRIALS = 3
CERTIFICATION_NOTE = "certified lower bound, generically exact w.h.p."


@dataclass(frozen=True)
class CoordinateAssignment:
    prime: int
    points: tuple[tuple[int, ...], ...]

    @classmethod
    def random(cls, n: int, d: int, seed: int, prime: int = DEFAULT_PRIME) -> CoordinateAssignment:
        rng = Xoshiro256(seed)
        return cls(prime, tuple(tuple(rng.below(prime) for _ in range(d)) for _ in range(n)))


@dataclass(frozen=True)
class RigidityMatrixView:
    edges: tuple[Edge, ...]
    ncols: int
    rows: list[list[int]] = field(repr=False)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols


@dataclass(frozen=True)
class TrialRank:
    seed: int
    prime: int
    rank: int


@dataclass(frozen=True)
class RankResult:
    rank: int
    d: int
    trials: tuple[TrialRank, ...]
    note: str = CERTIFICATION_NOTE

    @property
    def prime(self) -> int:
        return self.trials[0].prime

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "d": self.d,
            "prime": str(self.prime),
            "trials": [{"seed": t.seed, "rank": t.rank} for t in self.trials],
        }


def build_rigidity_matrix(g: Graph, params: SparsityParams, coords: CoordinateAssignment) -> RigidityMatrixView:
    d, p = params.d, coords.prime
    if len(coords.points) != g.n or any(len(pt) != d for pt in coords.points):
        raise GraphInputError(f"coordinates must give {g.n} points with {d} components each")
    rows = []
    for u, v in g.edges:
        row = [0] * (d * g.n)
        pu, pv = coords.points[u], coords.points[v]
        for k in range(d):
            diff = (pu[k] - pv[k]) % p
            row[d * u + k] = diff
            row[d * v + k] = (-diff) % p
        rows.append(row)
    return RigidityMatrixView(g.edges, d * g.n, rows)


def _trial_seeds(seed: int, trials: int) -> list[int]:
    if trials < 1:
        raise GraphInputError("trials must be at least 1")
    return [(seed + i) & MASK64 for i in range(trials)]


def _row_ranks(g: Graph, params: SparsityParams, subsets: Sequence[Sequence[int]], trials: int, seed: int, prime: int):
    """Rank of the rows indexed by each subset, per trial."""
    out = []
    for s in _trial_seeds(seed, trials):
        view = build_rigidity_matrix(g, params, CoordinateAssignment.random(g.n, params.d, s, prime))
        out.append((s, [kernels.rank_mod([view.rows[i] for i in sub], view.ncols, prime) for sub in subsets]))
    return out


def generic_rank(
    g: Graph, params: SparsityParams, trials: int = DEFAULT_TRIALS, seed: int = 0, prime: int = DEFAULT_PRIME
) -> RankResult:
    per = _row_ranks(g, params, [range(g.m)], trials, seed, prime)
    results = tuple(TrialRank(s, prime, ranks[0]) for s, ranks in per)
    best = max(t.rank for t in results)
    if any(t.rank != best for t in results):
        log.warning("rank trials disagree for %r at d=%d: %s", g, params.d, [t.rank for t in results])
    return RankResult(best, params.d, results)


def _edge_indices(g: Graph, f: Iterable[tuple[int, int]]) -> list[int]:
    index = {e: i for i, e in enumerate(g.edges)}
    out = []
    for u, v in f:
        e = canonical(u, v)
        if e not in index:
            raise GraphInputError(f"edge {e} is not in the graph")
        out.append(index[e])
    return out


def is_independent(
    g: Graph,
    f: Iterable[tuple[int, int]],
    params: SparsityParams,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    prime: int = DEFAULT_PRIME,
) -> bool:
    idx = _edge_indices(g, f)
    if not idx:
        return True
    return any(ranks[0] == len(idx) for _, ranks in _row_ranks(g, params, [idx], trials, seed, prime))


def rigidity_target(n: int, params: SparsityParams) -> int:
    return params.bound(n)


def is_rigid(g: Graph, params: SparsityParams, trials: int = DEFAULT_TRIALS, seed: int = 0) -> bool:
    """Generic rigidity; graphs on at most d+1 vertices are rigid exactly when complete."""
    if g.n <= params.d + 1:
        return g.is_complete()
    return generic_rank(g, params, trials, seed).rank == rigidity_target(g.n, params)


def maxwell_check(
    g: Graph, f: Iterable[tuple[int, int]], params: SparsityParams, trials: int = DEFAULT_TRIALS, seed: int = 0
) -> dict:
    """Independent edge sets must span d-sparse subgraphs."""
    f = [canonical(*e) for e in f]
    independent = is_independent(g, f, params, trials, seed)
    sparse = is_d_sparse(g.edge_subgraph(f), params).is_sparse if independent else None
    return {
        "name": "maxwell",
        "independent": independent,
        "sparse": sparse,
        "pass": (not independent) or bool(sparse),
    }
