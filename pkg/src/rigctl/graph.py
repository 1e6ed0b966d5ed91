"""Simple undirected graphs on dense 0-indexed vertices, generators and I/O."""

from __future__ import annotations

import json
from collections.abc import Iterable
from itertools import combinations

from .errors import GraphInputError
from .rng import Xoshiro256

Edge = tuple[int, int]


def canonical(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple graph.

    ``edges`` keeps the order in which edges were supplied (each pair stored
    as ``(min, max)``); this is the "given" insertion order used by the greedy
    routines. Equality ignores order.
    """

    __slots__ = ("n", "edges", "_edge_set", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphInputError(f"vertex count must be nonnegative, got {n}")
        out: list[Edge] = []
        seen: set[Edge] = set()
        for i, (u, v) in enumerate(edges):
            u, v = int(u), int(v)
            if u == v:
                raise GraphInputError(f"edge {i}: self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(f"edge {i}: vertex index out of range in ({u}, {v}) for n={n}")
            e = canonical(u, v)
            if e in seen:
                raise GraphInputError(f"edge {i}: duplicate edge {e}")
            seen.add(e)
            out.append(e)
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(out)
        self._edge_set = frozenset(seen)
        self._adj: list[frozenset[int]] | None = None

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def edge_set(self) -> frozenset[Edge]:
        return self._edge_set

    def adjacency(self) -> list[frozenset[int]]:
        if self._adj is None:
            nbrs: list[set[int]] = [set() for _ in range(self.n)]
            for u, v in self.edges:
                nbrs[u].add(v)
                nbrs[v].add(u)
            self._adj = [frozenset(s) for s in nbrs]
        return self._adj

    def has_edge(self, u: int, v: int) -> bool:
        return canonical(u, v) in self._edge_set

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def non_edges(self) -> list[Edge]:
        return [e for e in combinations(range(self.n), 2) if e not in self._edge_set]

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> Graph:
        return Graph(self.n, list(self.edges) + list(extra))

    def edge_subgraph(self, edges: Iterable[tuple[int, int]]) -> Graph:
        """Spanning subgraph ``(V, F)``; every edge of ``F`` must be in this graph."""
        sub = []
        for u, v in edges:
            e = canonical(u, v)
            if e not in self._edge_set:
                raise GraphInputError(f"edge {e} is not in the graph")
            sub.append(e)
        return Graph(self.n, sub)

    def relabel(self, perm: list[int]) -> Graph:
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def connected_components(self) -> int:
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        count = self.n
        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                count -= 1
        return count

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._edge_set == other._edge_set

    def __hash__(self) -> int:
        return hash((self.n, self._edge_set))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def check_vertices(g: Graph, x: Iterable[int]) -> frozenset[int]:
    xs = frozenset(int(v) for v in x)
    for v in xs:
        if not 0 <= v < g.n:
            raise GraphInputError(f"vertex {v} out of range for n={g.n}")
    return xs


def induced_edge_count(g: Graph, x: Iterable[int]) -> int:
    """Number of edges of ``g`` with both endpoints in ``x``."""
    xs = check_vertices(g, x)
    if len(xs) * len(xs) < 2 * g.m:
        adj = g.adjacency()
        return sum(len(adj[v] & xs) for v in xs) // 2
    return sum(1 for u, v in g.edges if u in xs and v in xs)


def induced_edges(g: Graph, x: Iterable[int]) -> list[Edge]:
    xs = check_vertices(g, x)
    return [e for e in g.edges if e[0] in xs and e[1] in xs]


# --- generators -------------------------------------------------------------


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise GraphInputError(f"complete_graph needs n >= 1, got {n}")
    return Graph(n, combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def parallel_connection(g1: Graph, g2: Graph, e1: tuple[int, int], e2: tuple[int, int]) -> Graph:
    """Glue ``g2`` onto ``g1`` by identifying ``e2[0]`` with ``e1[0]`` and ``e2[1]`` with ``e1[1]``.

    Vertices of ``g1`` keep their labels; the remaining vertices of ``g2`` are
    appended in increasing order. The shared edge appears once.
    """
    if not g1.has_edge(*e1):
        raise GraphInputError(f"edge {e1} not in first graph")
    if not g2.has_edge(*e2):
        raise GraphInputError(f"edge {e2} not in second graph")
    mapping: dict[int, int] = {e2[0]: e1[0], e2[1]: e1[1]}
    nxt = g1.n
    for v in range(g2.n):
        if v not in mapping:
            mapping[v] = nxt
            nxt += 1
    shared = canonical(*e1)
    edges = list(g1.edges)
    for u, v in g2.edges:
        e = canonical(mapping[u], mapping[v])
        if e != shared:
            edges.append(e)
    return Graph(nxt, sorted(edges))


def example_double_k5(with_shared_edge: bool = False) -> tuple[Graph, Edge]:
    """Two K5 blocks glued along ``(0, 1)``; the glue edge is removed unless requested.

    Blocks are ``{0,1,2,3,4}`` and ``{0,1,5,6,7}``.
    """
    k5 = complete_graph(5)
    g = parallel_connection(k5, k5, (0, 1), (0, 1))
    if not with_shared_edge:
        g = Graph(g.n, [e for e in g.edges if e != (0, 1)])
    return g, (0, 1)


def example_k5_flower() -> Graph:
    """Core K5 on ``0..4`` with a further K5 glued along each of its ten edges."""
    k5 = complete_graph(5)
    g = k5
    for e in combinations(range(5), 2):
        g = parallel_connection(g, k5, e, (0, 1))
    return g


def k5_flower_blocks() -> list[frozenset[int]]:
    """Vertex sets of the eleven K5 blocks of :func:`example_k5_flower`, core first."""
    blocks = [frozenset(range(5))]
    for i, (a, b) in enumerate(combinations(range(5), 2)):
        base = 5 + 3 * i
        blocks.append(frozenset({a, b, base, base + 1, base + 2}))
    return blocks


def random_graph(n: int, density: float, seed: int) -> Graph:
    """Each pair becomes an edge with probability ``density`` (resolution 1e-6)."""
    rng = Xoshiro256(seed)
    cut = round(density * 1_000_000)
    return Graph(n, [e for e in combinations(range(n), 2) if rng.below(1_000_000) < cut])


GENERATORS = {
    "double-k5": lambda: example_double_k5()[0],
    "double-k5-plus": lambda: example_double_k5(with_shared_edge=True)[0],
    "k5-flower": example_k5_flower,
}


# --- serialization ------------------------------------------------------------


def _parse_int(tok: str, where: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GraphInputError(f"{where}: expected integer, got {tok!r}") from None


def _parse_edge_list(text: str) -> Graph:
    lines = [ln.strip() for ln in text.split("\n")]
    numbered = [(i + 1, ln) for i, ln in enumerate(lines) if ln and not ln.startswith("#")]
    if not numbered:
        raise GraphInputError("line 1: empty input, expected header 'n m'")
    lineno, header = numbered[0]
    parts = header.split()
    if len(parts) != 2:
        raise GraphInputError(f"line {lineno}: header must be 'n m', got {header!r}")
    n = _parse_int(parts[0], f"line {lineno}")
    m = _parse_int(parts[1], f"line {lineno}")
    if n < 0 or m < 0:
        raise GraphInputError(f"line {lineno}: negative count in header")
    body = numbered[1:]
    if len(body) != m:
        raise GraphInputError(f"line {lineno}: header announces {m} edges, found {len(body)}")
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for lineno, ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphInputError(f"line {lineno}: expected 'u v', got {ln!r}")
        u = _parse_int(parts[0], f"line {lineno}")
        v = _parse_int(parts[1], f"line {lineno}")
        if u == v:
            raise GraphInputError(f"line {lineno}: self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphInputError(f"line {lineno}: vertex index out of range in '{ln}' for n={n}")
        e = canonical(u, v)
        if e in seen:
            raise GraphInputError(f"line {lineno}: duplicate edge {e}")
        seen.add(e)
        edges.append(e)
    return Graph(n, edges)


def _parse_json(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphInputError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise GraphInputError("JSON graph must be an object with fields 'n' and 'edges'")
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise GraphInputError("field 'n': expected nonnegative integer")
    if not isinstance(obj["edges"], list):
        raise GraphInputError("field 'edges': expected a list")
    pairs = []
    for i, pair in enumerate(obj["edges"]):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in pair)
        ):
            raise GraphInputError(f"field 'edges[{i}]': expected [u, v] integer pair")
        pairs.append((pair[0], pair[1]))
    try:
        return Graph(n, pairs)
    except GraphInputError as exc:
        raise GraphInputError(f"field 'edges': {exc}") from None


def parse_graph(data: bytes | str, fmt: str = "auto") -> Graph:
    """Parse edge-list or JSON text. ``auto`` picks JSON when the first non-space byte is ``{``."""
    text = data.decode("ascii") if isinstance(data, bytes) else data
    if fmt == "auto":
        fmt = "json" if text.lstrip().startswith("{") else "edge-list"
    if fmt == "json":
        return _parse_json(text)
    if fmt == "edge-list":
        return _parse_edge_list(text)
    raise GraphInputError(f"unknown input format {fmt!r}")


def serialize_graph(g: Graph, fmt: str = "json") -> bytes:
    edges = g.sorted_edges()
    if fmt == "json":
        return json.dumps({"n": g.n, "edges": [list(e) for e in edges]}, separators=(",", ":")).encode()
    if fmt == "edge-list":
        lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in edges]
        return ("\n".join(lines) + "\n").encode()
    if fmt == "dot":
        lines = ["graph G {"]
        lines += [f"  {v};" for v in range(g.n)]
        lines += [f"  {u} -- {v};" for u, v in edges]
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    raise GraphInputError(f"unknown output format {fmt!r}")
