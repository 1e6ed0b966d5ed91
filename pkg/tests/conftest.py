from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from rigctl.graph import Graph, example_double_k5, example_k5_flower

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def graphs(draw: st.DrawFn, min_n: int = 0, max_n: int = 8) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)


dims = st.integers(1, 5)


@pytest.fixture(scope="session")
def double_k5():
    return example_double_k5()


@pytest.fixture(scope="session")
def double_k5_plus():
    return example_double_k5(with_shared_edge=True)


@pytest.fixture(scope="session")
def flower():
    return example_k5_flower()
