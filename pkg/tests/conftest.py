import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from treeburn.burning import is_valid_burning
from treeburn.tree import build_tree


def naive_burning_number(t):
    """Smallest k with some strictly valid k-sequence, by trying them all."""
    for k in range(1, t.n + 1):
        for seq in itertools.permutations(range(t.n), k):
            if is_valid_burning(t, seq):
                return k
    raise AssertionError("every tree burns within n steps")


def bfs_all_pairs(t):
    """Independent all-pairs distances (Floyd-Warshall on the edge list)."""
    inf = 10 ** 9
    d = np.full((t.n, t.n), inf, dtype=np.int64)
    np.fill_diagonal(d, 0)
    for u, v in t.edges:
        d[u, v] = d[v, u] = 1
    for m in range(t.n):
        d = np.minimum(d, d[:, m : m + 1] + d[m : m + 1, :])
    return d


@st.composite
def trees(draw, min_n=1, max_n=40):
    n = draw(st.integers(min_n, max_n))
    parents = [draw(st.integers(0, i - 1)) for i in range(1, n)]
    perm = draw(st.permutations(range(n)))
    return build_tree(n, [(perm[p], perm[i]) for i, p in enumerate(parents, start=1)])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
