import pytest

from treeburn.burning import is_valid_burning, is_valid_cover
from treeburn.errors import BadParam, BadVertexId
from treeburn.generators import (
    GenSpec,
    augment_degree2,
    complete_binary,
    generate,
    path,
    perfect_binary,
    prop1_maximal,
    prop1_order,
    random_3k_ary,
    random_fbtnp,
    random_full,
    random_tree,
    star,
)
from treeburn.tree import ball, build_tree, classify, rooted


@pytest.mark.parametrize("h", range(0, 17))
def test_perfect_counts(h):
    t, rv = perfect_binary(h)
    assert t.n == 2 ** (h + 1) - 1
    assert len(t.leaves) == 2 ** h if h else t.n == 1
    assert rv.height == h


def test_complete_counts_and_left_fill():
    for h in range(1, 6):
        for leaves in range(1, 2 ** h):
            t, rv = complete_binary(h, leaves)
            assert t.n == 2 ** h - 1 + leaves
            bottom = [v for v in range(t.n) if rv.depth[v] == h]
            assert bottom == list(range(2 ** h - 1, 2 ** h - 1 + leaves))
            assert classify(t, 0).is_complete


@pytest.mark.parametrize("h, leaves", [(3, 0), (3, 8), (0, 1)])
def test_complete_bad_params(h, leaves):
    with pytest.raises(BadParam):
        complete_binary(h, leaves)


def test_complete_examples():
    assert complete_binary(3, 7)[0].n == 14
    assert complete_binary(3, 1)[0].n == 8
    t, _ = complete_binary(2, 2)
    assert t.n == 5 and classify(t, 0).is_complete


def test_random_fbtnp():
    t, rv = random_fbtnp(5, 0)
    assert sorted(t.degree(v) for v in range(5)) == [1, 1, 1, 2, 3]
    assert classify(t, rv.root).is_fbtnp
    t, rv = random_fbtnp(21, 7)
    assert t.n == 21 and classify(t, rv.root).is_fbtnp
    for bad in (4, 3, 1):
        with pytest.raises(BadParam):
            random_fbtnp(bad, 0)


def test_random_full_may_be_perfect():
    t, rv = random_full(3, 0)
    assert classify(t, rv.root).is_perfect
    t, rv = random_full(31, 2)
    assert classify(t, rv.root).is_full


def test_random_3k_ary():
    t, rv = random_3k_ary(3, 5, 0)
    assert t.n == 3 and rv.children[rv.root] == (1, 2)
    t, rv = random_3k_ary(40, 4, 1)
    assert t.n == 40 and classify(t, rv.root).is_3k_ary(4)
    t, rv = random_3k_ary(31, 2, 3)
    assert classify(t, rv.root).is_full
    with pytest.raises(BadParam):
        random_3k_ary(10, 1, 0)


def test_determinism():
    for fn, args in ((random_fbtnp, (51,)), (random_tree, (40,)), (random_3k_ary, (30, 3))):
        a, b = fn(*args, seed=9), fn(*args, seed=9)
        ta = a[0] if isinstance(a, tuple) else a
        tb = b[0] if isinstance(b, tuple) else b
        assert ta.edges == tb.edges


def test_path_and_star():
    assert path(1).n == 1 and path(2).edges == ((0, 1),)
    assert star(3).degree(0) == 3


@pytest.mark.parametrize("k", range(2, 11))
def test_prop1_order_and_disjoint_balls(k):
    t, rv, w = prop1_maximal(k)
    assert t.n == prop1_order(k) == 3 * (2 ** k - 1) - 2 * k
    assert w.k == k
    assert is_valid_burning(t, w) and is_valid_cover(t, w)
    balls = [ball(t.adjacency, [(v, k - 1 - i)]) for i, v in enumerate(w)]
    assert sum(len(b) for b in balls) == t.n
    assert set().union(*balls) == set(range(t.n))
    assert classify(t, rv.root).is_fbtnp


def test_prop1_small_orders():
    assert prop1_maximal(2)[0].n == 5
    assert prop1_maximal(3)[0].n == 15
    with pytest.raises(BadParam):
        prop1_maximal(1)


def test_augment_full_binary_and_star_unchanged():
    t, rv = random_fbtnp(25, 4)
    aug = augment_degree2(t, rv.root)
    assert aug.tree.n == t.n and aug.root == rv.root
    s = star(3)
    assert augment_degree2(s, 0).tree.n == 4


def test_augment_counts_and_branching():
    for seed in range(20):
        t = random_tree(30, seed)
        n2 = t.degree2_count
        aug = augment_degree2(t, 0)
        assert aug.tree.n == t.n + max(n2 - 1, 0)
        assert classify(aug.tree, aug.root).is_branching
        for v in range(aug.tree.n):
            assert aug.project(v) == v or aug.is_pendant(v)


def test_augment_path_endpoint_root():
    # P_3 has one degree-2 vertex; it is the one left out, so nothing is added
    aug = augment_degree2(path(3), 0)
    assert aug.tree.n == 3 and aug.root == 1
    aug = augment_degree2(path(5), 0)
    assert aug.tree.n == 5 + 2
    assert sorted(aug.origin[5:]) == [2, 3]
    with pytest.raises(BadVertexId):
        augment_degree2(path(3), 7)


def test_genspec_roundtrip_and_generate():
    spec = GenSpec("fbtnp_random", {"n": 11, "seed": 2})
    assert GenSpec.from_json(spec.to_json()) == spec
    g = generate(spec)
    assert g.tree.n == 11 and g.root == 0
    g = generate(GenSpec("prop1_maximal", {"k": 3}))
    assert g.witness is not None and g.tree.n == 15
    with pytest.raises(BadParam):
        GenSpec("nope", {})
