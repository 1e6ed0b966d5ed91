from __future__ import annotations

import os
import subprocess
import sys
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rigctl import _pykernels as py
from rigctl import kernels
from rigctl.rigidity import DEFAULT_PRIME
from rigctl.rng import Xoshiro256
from rigctl.sparsity import SparsityParams

from .conftest import graphs

try:
    from rigctl import _ckernels as cy
except ImportError:  # extension not built
    cy = None

needs_ext = pytest.mark.skipif(cy is None, reason="compiled extension not built")


def test_backend_selection_matches_build():
    assert kernels.BACKEND == ("cython" if cy is not None else "python")


def test_pure_python_fallback_selected_by_env():
    env = dict(os.environ, RIGCTL_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from rigctl import kernels; print(kernels.BACKEND)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"


def _arrays(g):
    return [u for u, _ in g.edges], [v for _, v in g.edges]


@needs_ext
@given(graphs(max_n=9), st.integers(1, 4), st.data())
def test_route_backends_agree(g, d, data):
    eu, ev = _arrays(g)
    forced = [0] * g.n
    if g.n:
        for w in data.draw(st.sets(st.integers(0, g.n - 1), max_size=d)):
            forced[w] = 1
    a1, a2 = [-1] * g.m, [-1] * g.m
    assert py.route(g.n, eu, ev, d, forced, a1) == cy.route(g.n, eu, ev, d, forced, a2)
    assert a1 == a2


@needs_ext
@given(graphs(min_n=2, max_n=9), st.integers(1, 5), st.integers(0, 2**32))
def test_greedy_backends_agree(g, d, seed):
    params = SparsityParams(d)
    order = list(g.edges) + [e for e in combinations(range(g.n), 2) if not g.has_edge(*e)]
    Xoshiro256(seed).shuffle(order)
    state = {}
    for mod in (py, cy):
        eu, ev, assign, kept = [], [], [], []
        for u, v in order:
            if mod.can_add_edge(g.n, eu, ev, assign, d, params.l, u, v):
                eu.append(u)
                ev.append(v)
                kept.append((u, v))
        state[mod.NAME] = (kept, assign)
    assert state["python"] == state["cython"]


def _random_rows(seed, r, c, p):
    rng = Xoshiro256(seed)
    return [[rng.below(p) for _ in range(c)] for _ in range(r)]


def _product(a, b, p):
    return [[sum(x * y for x, y in zip(row, col)) % p for col in zip(*b)] for row in a]


@given(st.integers(0, 2**32), st.integers(1, 8), st.integers(1, 8), st.integers(0, 8))
def test_rank_of_low_rank_product(seed, r, c, k):
    # A (r x k) times B (k x c) has rank min(r, c, k) for generic factors
    p = DEFAULT_PRIME
    a = _random_rows(seed, r, k, p) if k else [[] for _ in range(r)]
    b = _random_rows(seed + 1, k, c, p)
    rows = _product(a, b, p) if k else [[0] * c for _ in range(r)]
    assert kernels.rank_mod(rows, c, p) == min(r, c, k)
    assert py.rank_mod(rows, c, p) == min(r, c, k)


def test_rank_mod_small_prime_and_edge_cases():
    assert py.rank_mod([], 3, 7) == 0
    assert py.rank_mod([[1, 2], [2, 4]], 2, 7) == 1
    assert py.rank_mod([[1, 2], [2, 5]], 2, 7) == 2
    for mod in (py, cy) if cy is not None else (py,):
        assert mod.rank_mod([[7, 14]], 2, 7) == 0
        assert mod.rank_mod([[-1, 3]], 2, 7) == 1


@needs_ext
def test_rank_mod_rejects_oversized_prime():
    with pytest.raises(ValueError):
        cy.rank_mod([[1]], 1, 2**63 + 1)


@needs_ext
def test_suite_output_is_backend_independent():
    argv = [sys.executable, "-m", "rigctl.cli", "verify", "all", "--criteria", "1,4,6,8"]
    outs = []
    for pure in ("", "1"):
        env = dict(os.environ, RIGCTL_PURE_PYTHON=pure)
        res = subprocess.run(argv, env=env, capture_output=True, check=True)
        outs.append(res.stdout)
    assert outs[0] == outs[1]
