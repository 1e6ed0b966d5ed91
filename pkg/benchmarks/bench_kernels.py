"""Compare the compiled and pure-Python kernels on representative workloads.

Run with ``python benchmarks/bench_kernels.py [--repeat N]``.
"""

from __future__ import annotations

import argparse
import statistics
import timeit
from collections.abc import Callable

from rigctl import _pykernels
from rigctl.graph import example_k5_flower, random_graph
from rigctl.rigidity import DEFAULT_PRIME, CoordinateAssignment, build_rigidity_matrix
from rigctl.sparsity import SparsityParams

try:
    from rigctl import _ckernels
except ImportError:
    _ckernels = None


def _greedy(mod, g, d: int) -> Callable[[], int]:
    l = d * (d + 1) // 2

    def go() -> int:
        eu: list[int] = []
        ev: list[int] = []
        assign: list[int] = []
        for u, v in g.edges:
            if mod.can_add_edge(g.n, eu, ev, assign, d, l, u, v):
                eu.append(u)
                ev.append(v)
        return len(eu)

    return go


def _route(mod, g, d: int) -> Callable[[], int]:
    eu = [u for u, _ in g.edges]
    ev = [v for _, v in g.edges]
    forced = [0] * g.n
    for w in range(d):
        forced[w] = 1
    return lambda: mod.route(g.n, eu, ev, d, forced, [-1] * g.m)[0]


def _rank(mod, g, d: int) -> Callable[[], int]:
    view = build_rigidity_matrix(g, SparsityParams(d), CoordinateAssignment.random(g.n, d, 0))
    return lambda: mod.rank_mod(view.rows, view.ncols, DEFAULT_PRIME)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    flower = example_k5_flower()
    dense = random_graph(14, 0.6, 7)
    cases = [
        ("greedy maximal, flower d=3", _greedy, flower, 3),
        ("greedy maximal, G(14,0.6) d=4", _greedy, dense, 4),
        ("route one forced set, flower d=3", _route, flower, 3),
        ("rank_mod, flower d=3 (100x105)", _rank, flower, 3),
        ("rank_mod, G(14,0.6) d=5", _rank, dense, 5),
    ]
    mods = [_pykernels] + ([_ckernels] if _ckernels is not None else [])
    print(f"{'workload':38s}" + "".join(f"{m.NAME:>12s}" for m in mods) + ("     speedup" if len(mods) == 2 else ""))
    for label, make, g, d in cases:
        times, results = [], []
        for mod in mods:
            fn = make(mod, g, d)
            results.append(fn())
            number = max(1, int(0.2 / max(timeit.timeit(fn, number=1), 1e-6)))
            runs = timeit.repeat(fn, number=number, repeat=args.repeat)
            times.append(statistics.median(runs) / number)
        assert len(set(results)) == 1, f"backends disagree on {label}: {results}"
        row = f"{label:38s}" + "".join(f"{t * 1e3:10.3f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:11.1f}x"
        print(row)
    if _ckernels is None:
        print("compiled extension not built; only the Python kernels were timed")


if __name__ == "__main__":
    main()
