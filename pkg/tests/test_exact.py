import math

import pytest

from conftest import naive_burning_number
from treeburn.burning import is_valid_burning
from treeburn.errors import BudgetExceeded
from treeburn.exact import Budget, burning_number_exact, cover_with_radii, decide_burnable
from treeburn.generators import complete_binary, path, perfect_binary, random_tree
from treeburn.tree import ball, build_tree, induced_subtree


def test_single_vertex():
    r = burning_number_exact(path(1))
    assert r.b == 1 and r.witness.sources == (0,)


@pytest.mark.parametrize("n", range(1, 17))
def test_paths(n):
    r = burning_number_exact(path(n))
    assert r.b == math.ceil(math.sqrt(n))
    assert is_valid_burning(path(n), r.witness) and r.witness.k == r.b


def test_perfect_h2():
    assert burning_number_exact(perfect_binary(2)[0]).b == 3


def test_decide_examples():
    assert decide_burnable(path(9), 2) is None
    t14, _ = complete_binary(3, 7)
    assert decide_burnable(t14, 3) is None
    assert is_valid_burning(t14, decide_burnable(t14, 4))
    t12, _ = complete_binary(3, 5)
    assert is_valid_burning(t12, decide_burnable(t12, 3))


def test_k_one_only_for_single_vertex():
    assert decide_burnable(path(1), 1).sources == (0,)
    assert decide_burnable(path(2), 1) is None
    assert decide_burnable(path(2), 0) is None


@pytest.mark.parametrize("seed", range(150))
def test_agrees_with_naive_enumeration(seed):
    t = random_tree(1 + seed % 9, seed)
    r = burning_number_exact(t)
    assert r.b == naive_burning_number(t)
    assert is_valid_burning(t, r.witness) and r.witness.k == r.b


@pytest.mark.parametrize("seed", range(25))
def test_subtree_monotone(seed):
    t = random_tree(6 + seed % 9, seed + 500)
    b = burning_number_exact(t).b
    # peel leaves one at a time; every intermediate set stays connected
    keep = set(range(t.n))
    while len(keep) > 1:
        leaf = min(v for v in keep if sum(w in keep for w in t.adjacency[v]) == 1)
        keep.discard(leaf)
        sub, _ = induced_subtree(t, keep)
        assert burning_number_exact(sub).b <= b


def test_deterministic_witness():
    t = random_tree(14, 3)
    assert burning_number_exact(t).witness == burning_number_exact(t).witness


def test_budget_exceeded_carries_upper_bound():
    t = random_tree(30, 1)
    with pytest.raises(BudgetExceeded) as info:
        burning_number_exact(t, Budget(max_nodes=3))
    assert info.value.upper_bound is not None
    assert info.value.upper_bound >= burning_number_exact(t).b


def test_cover_with_radii():
    t = path(7)
    centers = cover_with_radii(t, [1, 2])
    covered = ball(t.adjacency, zip(centers, [2, 1]))
    assert covered == set(range(7))
    assert cover_with_radii(t, [1, 1]) is None
    star = build_tree(5, [(0, i) for i in range(1, 5)])
    assert cover_with_radii(star, [1]) == [0]
