import random

import pytest
from hypothesis import strategies as st

from fvs_antlers.multigraph import MultiGraph


@st.composite
def multigraphs(draw, max_n=8, max_m=14, loops=True):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(0, max_m))
    vert = st.integers(1, n)
    pairs = draw(st.lists(st.tuples(vert, vert), min_size=m, max_size=m))
    if not loops:
        pairs = [(u, v) for u, v in pairs if u != v]
    return MultiGraph.from_edges(pairs, vertices=range(1, n + 1))


def seeded_graph(seed, n_max=10, m_factor=2):
    rng = random.Random(seed)
    n = rng.randint(1, n_max)
    m = rng.randint(0, m_factor * n)
    pairs = [(rng.randint(1, n), rng.randint(1, n)) for _ in range(m)]
    return MultiGraph.from_edges(pairs, vertices=range(1, n + 1))


@pytest.fixture
def triangle():
    return MultiGraph.from_edges([(1, 2), (2, 3), (1, 3)])
