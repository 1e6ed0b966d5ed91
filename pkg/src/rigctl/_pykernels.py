"""Pure-Python kernels. Reference semantics for the compiled ``_ckernels`` module.

The flow kernel works on the bipartite network used for sparsity testing::

    source -> edge node (cap 1) -> vertex node of each non-forced endpoint (cap inf)
           -> sink (cap d per vertex)

A flow is stored as ``assign[e]``: the vertex that edge ``e`` sends its unit to,
or ``-1`` if the edge carries no flow. Augmenting paths are reversal paths in
this orientation, so a warm start from any capacity-respecting assignment is a
valid feasible flow.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Sequence
from itertools import combinations

NAME = "python"


def _augment(e, eu, ev, d, forced, assign, load, inc):
    starts = [w for w in (eu[e], ev[e]) if not forced[w]]
    if not starts:
        return False
    parent: dict[int, int] = {}
    queue = deque()
    for w in starts:
        if w not in parent:
            parent[w] = e
            queue.append(w)
    while queue:
        w = queue.popleft()
        if load[w] < d:
            load[w] += 1
            x = w
            f = parent[x]
            while True:
                prev = assign[f]
                assign[f] = x
                if f == e:
                    return True
                x = prev
                f = parent[x]
        for f in inc[w]:
            if assign[f] != w:
                continue
            x = ev[f] if eu[f] == w else eu[f]
            if not forced[x] and x not in parent:
                parent[x] = f
                queue.append(x)
    return False


def route(
    n: int,
    eu: Sequence[int],
    ev: Sequence[int],
    d: int,
    forced: Sequence[int],
    assign: list[int],
) -> tuple[int, list[int]]:
    """Complete ``assign`` to a maximum flow; return ``(unrouted, blocked)``.

    Edges assigned to forced vertices are released first. ``blocked`` lists the
    non-forced vertices whose sink node is unreachable in the final residual
    network, in increasing order.
    """
    m = len(eu)
    inc: list[list[int]] = [[] for _ in range(n)]
    for f in range(m):
        inc[eu[f]].append(f)
        inc[ev[f]].append(f)
    load = [0] * n
    for f in range(m):
        a = assign[f]
        if a >= 0:
            if forced[a]:
                assign[f] = -1
            else:
                load[a] += 1
    unrouted = 0
    for f in range(m):
        if assign[f] < 0 and not _augment(f, eu, ev, d, forced, assign, load, inc):
            unrouted += 1
    # vertices that reach spare capacity: reverse BFS from unsaturated vertices
    reach = [False] * n
    queue = deque()
    for w in range(n):
        if not forced[w] and load[w] < d:
            reach[w] = True
            queue.append(w)
    while queue:
        x = queue.popleft()
        for f in inc[x]:
            w = assign[f]
            if w >= 0 and w != x and not reach[w]:
                reach[w] = True
                queue.append(w)
    blocked = [w for w in range(n) if not forced[w] and not reach[w]]
    return unrouted, blocked


def _forced_sets(n: int, d: int, u: int, v: int):
    if d == 1:
        yield (u,)
        return
    others = [w for w in range(n) if w != u and w != v]
    for rest in combinations(others, d - 2):
        yield (u, v) + rest


def can_add_edge(
    n: int,
    eu: Sequence[int],
    ev: Sequence[int],
    assign: list[int],
    d: int,
    l: int,
    u: int,
    v: int,
) -> bool:
    """Whether the sparse graph ``(eu, ev)`` stays d-sparse after adding ``uv``.

    ``assign`` must be a complete orientation of the current graph with every
    load at most ``d``. On success it is extended in place by one entry for the
    new edge; on failure it is left untouched.
    """
    if n < d + 2:
        assign.append(u)
        return True
    eu2 = list(eu) + [u]
    ev2 = list(ev) + [v]
    limit = d * d - l
    forced = [0] * n
    for dset in _forced_sets(n, d, u, v):
        for w in dset:
            forced[w] = 1
        trial = assign + [-1]
        unrouted, _ = route(n, eu2, ev2, d, forced, trial)
        for w in dset:
            forced[w] = 0
        if unrouted > limit:
            return False
    trial = assign + [-1]
    route(n, eu2, ev2, d, forced, trial)
    assign[:] = trial
    return True


def rank_mod(rows: list[list[int]], ncols: int, p: int) -> int:
    """Rank over GF(p) by row reduction; the first nonzero entry in each column is the pivot."""
    work = [r2 for r2 in ([x % p for x in r] for r in rows) if any(r2)]
    rank = 0
    for col in range(ncols):
        if rank == len(work):
            break
        piv = None
        for i in range(rank, len(work)):
            if work[i][col]:
                piv = i
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        inv = pow(prow[col], p - 2, p)
        prow = [(x * inv) % p for x in prow]
        work[rank] = prow
        tail = range(col, ncols)
        for i in range(rank + 1, len(work)):
            r = work[i]
            f = r[col]
            if f:
                for j in tail:
                    if prow[j]:
                        r[j] = (r[j] - f * prow[j]) % p
        rank += 1
    return rank
