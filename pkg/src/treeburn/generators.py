"""Constructors for the tree families the burners are defined on.

Every generator is deterministic given its parameters and seed.  Binary
families use heap layout (root 0, children of ``i`` at ``2i+1, 2i+2``)
or creation order, so vertex ids are stable across runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

import networkx as nx
import numpy as np

from .burning import BurningSequence
from .errors import BadParam, BadVertexId, RetriesExhausted
from .tree import RootedView, Tree, build_tree, classify, rooted

__all__ = [
    "GenSpec",
    "Augmentation",
    "generate",
    "perfect_binary",
    "complete_binary",
    "random_fbtnp",
    "random_full",
    "random_3k_ary",
    "random_tree",
    "prop1_maximal",
    "path",
    "star",
    "augment_degree2",
]

MAX_RETRIES = 200


def _heap_tree(n: int):
    t = build_tree(n, [((i - 1) // 2, i) for i in range(1, n)])
    return t, rooted(t, 0)


def perfect_binary(h: int):
    """Perfect binary tree of height ``h``: ``2^(h+1) - 1`` vertices."""
    if h < 0:
        raise BadParam(f"height must be >= 0, got {h}")
    return _heap_tree(2 ** (h + 1) - 1)


def complete_binary(h: int, last_level_leaves: int):
    """Complete tree of height ``h`` with the leftmost ``last_level_leaves``
    positions of the bottom level filled."""
    if h < 1:
        raise BadParam(f"height must be >= 1, got {h}")
    if not 1 <= last_level_leaves <= 2 ** h - 1:
        raise BadParam(f"last level holds 1..{2 ** h - 1} leaves, got {last_level_leaves}")
    return _heap_tree(2 ** h - 1 + last_level_leaves)


def path(n: int) -> Tree:
    if n < 1:
        raise BadParam(f"path needs n >= 1, got {n}")
    return build_tree(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Tree:
    """``K_{1,leaves}`` with the center at 0."""
    return build_tree(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def _rng(seed):
    return np.random.default_rng(seed)


def _grow_full(n_target: int, rng) -> list:
    edges = [(0, 1), (0, 2)]
    leaves = [1, 2]
    nxt = 3
    while nxt < n_target:
        i = int(rng.integers(len(leaves)))
        v = leaves[i]
        leaves[i] = nxt
        leaves.append(nxt + 1)
        edges += [(v, nxt), (v, nxt + 1)]
        nxt += 2
    return edges


def random_fbtnp(n_target: int, seed=0):
    """Random full binary tree of order ``n_target`` that is not perfect.

    Grows from a cherry by splitting a uniformly chosen leaf; perfect
    outcomes are rejected and regrown from the same RNG stream.
    """
    if n_target < 5 or n_target % 2 == 0:
        raise BadParam(f"full binary non-perfect trees have odd order >= 5, got {n_target}")
    rng = _rng(seed)
    for _ in range(MAX_RETRIES):
        t = build_tree(n_target, _grow_full(n_target, rng))
        if not classify(t, 0).is_perfect:
            return t, rooted(t, 0)
    raise RetriesExhausted(f"no non-perfect tree after {MAX_RETRIES} draws")


def random_full(n_target: int, seed=0):
    """Random full binary tree of odd order; may come out perfect."""
    if n_target < 1 or n_target % 2 == 0:
        raise BadParam(f"full binary trees have odd order, got {n_target}")
    if n_target == 1:
        t = build_tree(1, [])
    else:
        t = build_tree(n_target, _grow_full(n_target, _rng(seed)))
    return t, rooted(t, 0)


def random_3k_ary(n_target: int, k: int, seed=0):
    """Random rooted tree whose internal nodes have between 2 and ``k`` children."""
    if k < 2:
        raise BadParam(f"k must be >= 2, got {k}")
    if n_target < 3:
        raise BadParam(f"n_target must be >= 3, got {n_target}")
    if k == 2 and n_target % 2 == 0:
        raise BadParam("with k=2 the tree is full binary and needs odd order")
    rng = _rng(seed)
    for _ in range(MAX_RETRIES):
        children = {0: [1, 2], 1: [], 2: []}
        nxt = 3
        stuck = False
        while nxt < n_target:
            left = n_target - nxt
            open_internal = [v for v, c in children.items() if 2 <= len(c) < k]
            leaves = [v for v, c in children.items() if not c]
            split = left >= 2 and (not open_internal or rng.random() < 0.5)
            if split:
                v = leaves[int(rng.integers(len(leaves)))]
                children[v] = [nxt, nxt + 1]
                children[nxt] = []
                children[nxt + 1] = []
                nxt += 2
            elif open_internal:
                v = open_internal[int(rng.integers(len(open_internal)))]
                children[v].append(nxt)
                children[nxt] = []
                nxt += 1
            else:
                stuck = True
                break
        if not stuck:
            edges = [(v, c) for v, cs in children.items() for c in cs]
            t = build_tree(n_target, edges)
            return t, rooted(t, 0)
    raise RetriesExhausted(f"could not reach order {n_target} after {MAX_RETRIES} draws")


def random_tree(n: int, seed=0) -> Tree:
    """Uniform random labelled tree on ``n`` vertices (Pruefer decoding)."""
    if n < 1:
        raise BadParam(f"n must be >= 1, got {n}")
    if n <= 2:
        return path(n)
    code = _rng(seed).integers(0, n, size=n - 2).tolist()
    g = nx.from_prufer_sequence(code)
    return build_tree(n, g.edges())


def _add_perfect(edges: list, start: int, h: int):
    """Append a perfect tree of height ``h`` with ids from ``start``.

    Returns ``(root, leaves, next_id)``; height -1 adds nothing.
    """
    if h < 0:
        return None, [], start
    size = 2 ** (h + 1) - 1
    for i in range(1, size):
        edges.append((start + (i - 1) // 2, start + i))
    first_leaf = 2 ** h - 1
    return start, list(range(start + first_leaf, start + size)), start + size


def prop1_maximal(k: int):
    """Order-maximal FBTNP burnable in ``k`` steps with pairwise disjoint balls.

    Component ``i`` is a perfect tree of height ``k-i`` rooted at ``v_i``
    joined by the edge ``v_i v_i'`` to a perfect tree of height ``k-i-1``.
    Components are chained through leaves: the first component's port is a
    leaf of ``T(v_1')`` (which becomes the root), each middle component uses
    one leaf for both of its joins so that leaf ends with degree 3, and
    ``v_k`` closes the chain.  Every ball boundary sits on a leaf, so the
    balls ``N_{k-i}[v_i]`` are exactly the components.

    Returns ``(tree, rooted_view, witness)``.
    """
    if k < 2:
        raise BadParam(f"k must be >= 2, got {k}")
    edges: list = []
    nxt = 0
    sources, ports = [], []
    for i in range(1, k + 1):
        v, leaves_v, nxt = _add_perfect(edges, nxt, k - i)
        w, leaves_w, nxt = _add_perfect(edges, nxt, k - i - 1)
        if w is not None:
            edges.append((v, w))
        sources.append(v)
        if i == 1:
            ports.append(min(leaves_w))
        elif i == k:
            ports.append(v)
        else:
            ports.append(min(leaves_v + leaves_w))
    for a, b in zip(ports, ports[1:]):
        edges.append((a, b))
    t = build_tree(nxt, edges)
    return t, rooted(t, ports[0]), BurningSequence(tuple(sources))


def prop1_order(k: int) -> int:
    return 3 * (2 ** k - 1) - 2 * k


@dataclass(frozen=True)
class Augmentation:
    """Result of hanging a pendant leaf on degree-2 vertices.

    ``origin[v]`` is ``v`` for original vertices and the attachment vertex
    for added pendants.  ``root`` is the degree-2 vertex left without a
    pendant (the rooting under which every internal node has >= 2 children),
    or the caller's root when the tree has no degree-2 vertex.
    """

    tree: Tree
    base_n: int
    origin: tuple
    root: int

    def is_pendant(self, v: int) -> bool:
        return v >= self.base_n

    @property
    def mapping(self) -> dict:
        return {v: (("pendant", self.origin[v]) if v >= self.base_n else v)
                for v in range(self.tree.n)}

    def project(self, v: int) -> int:
        return self.origin[v]


def augment_degree2(t: Tree, root: int) -> Augmentation:
    if not 0 <= root < t.n:
        raise BadVertexId(f"root {root} outside 0..{t.n - 1}")
    deg2 = [v for v in range(t.n) if t.degree(v) == 2]
    if t.degree(root) == 2:
        left_out = root
    elif deg2:
        left_out = deg2[0]
    else:
        left_out = None
    edges = list(t.edges)
    origin = list(range(t.n))
    for v in deg2:
        if v != left_out:
            edges.append((v, len(origin)))
            origin.append(v)
    eff_root = left_out if left_out is not None else root
    if left_out is None and t.degree(root) == 1 and t.n > 2:
        eff_root = t.adjacency[root][0]
    return Augmentation(build_tree(len(origin), edges), t.n, tuple(origin), eff_root)


# -- serialisable generator specs ---------------------------------------------

FAMILIES = ("perfect", "complete", "full_random", "fbtnp_random", "three_k_ary_random",
            "path", "prop1_maximal", "random_tree")


@dataclass(frozen=True)
class GenSpec:
    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise BadParam(f"unknown family {self.family!r}; choose from {FAMILIES}")

    def to_json(self) -> str:
        return json.dumps({"family": self.family, "params": self.params}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "GenSpec":
        obj = json.loads(text)
        return cls(obj["family"], dict(obj.get("params", {})))


@dataclass(frozen=True)
class Generated:
    tree: Tree
    view: Optional[RootedView]
    witness: Optional[BurningSequence] = None

    @property
    def root(self) -> int:
        return self.view.root if self.view is not None else 0


def generate(spec: GenSpec) -> Generated:
    p = spec.params
    seed = p.get("seed", 0)
    fam = spec.family
    if fam == "perfect":
        return Generated(*perfect_binary(int(p["h"])))
    if fam == "complete":
        return Generated(*complete_binary(int(p["h"]), int(p["leaves"])))
    if fam == "fbtnp_random":
        return Generated(*random_fbtnp(int(p["n"]), seed))
    if fam == "full_random":
        return Generated(*random_full(int(p["n"]), seed))
    if fam == "three_k_ary_random":
        return Generated(*random_3k_ary(int(p["n"]), int(p["k"]), seed))
    if fam == "path":
        t = path(int(p["n"]))
        return Generated(t, rooted(t, 0))
    if fam == "prop1_maximal":
        return Generated(*prop1_maximal(int(p["k"])))
    if fam == "random_tree":
        t = random_tree(int(p["n"]), seed)
        return Generated(t, rooted(t, 0))
    raise BadParam(fam)  # unreachable: __post_init__ validates
