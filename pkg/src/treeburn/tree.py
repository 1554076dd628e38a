"""Immutable trees and the distance / diameter / classification queries on them.

Vertex ids are always ``0..n-1``.  Adjacency lists are sorted so every
traversal, and therefore every tie-break downstream, is deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import BadVertexId, DuplicateEdge, HasCycle, NotConnected

__all__ = [
    "Tree",
    "RootedView",
    "Branch",
    "DiametralPath",
    "Classification",
    "build_tree",
    "rooted",
    "distance",
    "closed_neighborhood",
    "eccentricity",
    "diametral_path",
    "classify",
    "spanning_tree",
    "induced_subtree",
]


@dataclass(frozen=True)
class Tree:
    """Undirected tree on vertices ``0..n-1``; build with :func:`build_tree`."""

    n: int
    edges: tuple
    adjacency: tuple = field(repr=False, compare=False)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple:
        return self.adjacency[v]

    @property
    def leaves(self) -> list:
        if self.n == 1:
            return [0]
        return [v for v in range(self.n) if len(self.adjacency[v]) == 1]

    def distances_from(self, v: int) -> list:
        _check_vertex(self, v)
        return bfs_distances(self.adjacency, v)

    @cached_property
    def distance_matrix(self) -> np.ndarray:
        """All-pairs distances as an ``(n, n)`` int32 array.  O(n^2) memory."""
        out = np.empty((self.n, self.n), dtype=np.int32)
        for v in range(self.n):
            out[v] = bfs_distances(self.adjacency, v)
        return out

    @cached_property
    def degree2_count(self) -> int:
        return sum(1 for a in self.adjacency if len(a) == 2)


def build_tree(n: int, edges: Iterable[Sequence[int]]) -> Tree:
    """Validate ``edges`` as a spanning tree of ``0..n-1`` and freeze it."""
    if n < 1:
        raise BadVertexId(f"tree needs at least one vertex, got n={n}")
    norm = []
    seen = set()
    for e in edges:
        u, v = int(e[0]), int(e[1])
        for x in (u, v):
            if not 0 <= x < n:
                raise BadVertexId(f"vertex id {x} outside 0..{n - 1}")
        if u == v:
            raise HasCycle(f"self-loop at {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise DuplicateEdge(f"edge {key} listed twice")
        seen.add(key)
        norm.append(key)

    # union-find catches cycles before the edge-count check so a triangle
    # reports HasCycle rather than a count mismatch
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in norm:
        ru, rv = find(u), find(v)
        if ru == rv:
            raise HasCycle(f"edge {(u, v)} closes a cycle")
        parent[ru] = rv
    if len(norm) != n - 1:
        raise NotConnected(f"{n} vertices need {n - 1} edges, got {len(norm)}")

    adj = [[] for _ in range(n)]
    for u, v in norm:
        adj[u].append(v)
        adj[v].append(u)
    return Tree(n, tuple(sorted(norm)), tuple(tuple(sorted(a)) for a in adj))


def _check_vertex(t: Tree, v: int) -> None:
    if not (isinstance(v, (int, np.integer)) and 0 <= v < t.n):
        raise BadVertexId(f"vertex id {v!r} outside 0..{t.n - 1}")


# -- traversal primitives ----------------------------------------------------
# These take a raw adjacency sequence plus an optional ``alive`` set so the
# peeling engine can run them on shrinking subtrees without rebuilding Trees.


def bfs_distances(adj, src: int, alive=None):
    """Distances from ``src``; list when ``alive`` is None, else dict."""
    if alive is None:
        dist = [-1] * len(adj)
        dist[src] = 0
        q = deque([src])
        while q:
            x = q.popleft()
            dx = dist[x] + 1
            for y in adj[x]:
                if dist[y] < 0:
                    dist[y] = dx
                    q.append(y)
        return dist
    dist = {src: 0}
    q = deque([src])
    while q:
        x = q.popleft()
        dx = dist[x] + 1
        for y in adj[x]:
            if y in alive and y not in dist:
                dist[y] = dx
                q.append(y)
    return dist


def bfs_parents(adj, src: int, alive=None) -> dict:
    par = {src: None}
    q = deque([src])
    while q:
        x = q.popleft()
        for y in adj[x]:
            if y not in par and (alive is None or y in alive):
                par[y] = x
                q.append(y)
    return par


def _farthest(dist) -> int:
    """Farthest vertex, smallest id on ties."""
    items = dist.items() if isinstance(dist, dict) else enumerate(dist)
    best, best_d = None, -1
    for v, d in items:
        if d > best_d or (d == best_d and v < best):
            best, best_d = v, d
    return best


def ball(adj, centers_radii, alive=None) -> set:
    """Union of closed balls ``N_r[c]`` over ``(c, r)`` pairs (multi-source BFS)."""
    best = {}
    q = deque()
    for c, r in centers_radii:
        if r < 0:
            continue
        if best.get(c, -1) < r:
            best[c] = r
            q.append(c)
    while q:
        x = q.popleft()
        rx = best[x] - 1
        if rx < 0:
            continue
        for y in adj[x]:
            if (alive is None or y in alive) and best.get(y, -1) < rx:
                best[y] = rx
                q.append(y)
    return set(best)


# -- rooted view ---------------------------------------------------------------


@dataclass(frozen=True)
class RootedView:
    """A tree with a designated root.  ``level(v) == depth[v] + 1``."""

    tree: Tree
    root: int
    parent: tuple
    depth: tuple
    height: int
    children: tuple = field(repr=False)

    def level(self, v: int) -> int:
        return self.depth[v] + 1

    def child_count(self, v: int) -> int:
        return len(self.children[v])

    def subtree(self, v: int) -> list:
        out, stack = [], [v]
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(self.children[x])
        return sorted(out)

    def levels(self) -> list:
        rows = [[] for _ in range(self.height + 1)]
        for v in range(self.tree.n):
            rows[self.depth[v]].append(v)
        return rows


def rooted(t: Tree, root: int) -> RootedView:
    _check_vertex(t, root)
    root = int(root)
    parent = [None] * t.n
    depth = [0] * t.n
    children = [[] for _ in range(t.n)]
    seen = [False] * t.n
    seen[root] = True
    q = deque([root])
    while q:
        x = q.popleft()
        for y in t.adjacency[x]:
            if not seen[y]:
                seen[y] = True
                parent[y] = x
                depth[y] = depth[x] + 1
                children[x].append(y)
                q.append(y)
    return RootedView(t, root, tuple(parent), tuple(depth), max(depth),
                      tuple(tuple(c) for c in children))


# -- metric queries ------------------------------------------------------------


def distance(t: Tree, u: int, v: int) -> int:
    _check_vertex(t, u)
    _check_vertex(t, v)
    if u == v:
        return 0
    if "distance_matrix" in t.__dict__:
        return int(t.distance_matrix[u, v])
    return bfs_distances(t.adjacency, u)[v]


def closed_neighborhood(t: Tree, v: int, k: int) -> set:
    """All vertices within distance ``k`` of ``v``, including ``v``."""
    _check_vertex(t, v)
    if k < 0:
        raise ValueError("radius must be non-negative")
    return ball(t.adjacency, [(v, k)])


def eccentricity(t: Tree, v: int) -> int:
    return max(t.distances_from(v))


@dataclass(frozen=True)
class Branch:
    """An off-path component hanging from a diametral-path vertex.

    ``height`` counts edges from the path vertex, so a single pendant
    leaf has height 1.
    """

    first: int
    height: int
    size: int


@dataclass(frozen=True)
class DiametralPath:
    vertices: tuple
    branch_info: tuple = field(repr=False)

    @property
    def d(self) -> int:
        return len(self.vertices) - 1

    def branches(self, i: int) -> tuple:
        return self.branch_info[i]

    def tallest_branch(self, i: int) -> Optional[Branch]:
        """Tallest branch at ``u_i``, smallest first-vertex id on ties."""
        bs = self.branch_info[i]
        if not bs:
            return None
        return min(bs, key=lambda b: (-b.height, b.first))


def _double_bfs_path(adj, start: int, alive=None) -> list:
    a = _farthest(bfs_distances(adj, start, alive))
    par = bfs_parents(adj, a, alive)
    dist = bfs_distances(adj, a, alive)
    b = _farthest(dist)
    path = [b]
    while path[-1] != a:
        path.append(par[path[-1]])
    return path  # b .. a


def raw_diametral_path(adj, alive=None, root=None) -> list:
    """Vertex list of a diameter path, ``u_0`` the end farther from ``root``."""
    start = min(alive) if alive is not None else 0
    path = _double_bfs_path(adj, start, alive)
    if root is None:
        root = start
    rd = bfs_distances(adj, root, alive)
    d0, d1 = rd[path[0]], rd[path[-1]]
    if d1 > d0 or (d1 == d0 and path[-1] < path[0]):
        path.reverse()
    return path


def path_branches(adj, path, alive=None) -> tuple:
    """For each path vertex, the off-path branches as :class:`Branch` records."""
    on_path = set(path)
    out = []
    for u in path:
        bs = []
        for p in adj[u]:
            if p in on_path or (alive is not None and p not in alive):
                continue
            size, depth = 0, 0
            stack = [(p, u, 1)]
            while stack:
                x, px, dx = stack.pop()
                size += 1
                depth = max(depth, dx)
                for y in adj[x]:
                    if y != px and (alive is None or y in alive):
                        stack.append((y, x, dx + 1))
            bs.append(Branch(p, depth, size))
        out.append(tuple(bs))
    return tuple(out)


def diametral_path(t: Tree, root: int = 0) -> DiametralPath:
    """Double-BFS diameter path oriented so ``u_0`` is farthest from ``root``.

    Ties between the two endpoints go to the smaller endpoint id.
    """
    _check_vertex(t, root)
    path = raw_diametral_path(t.adjacency, None, root)
    return DiametralPath(tuple(path), path_branches(t.adjacency, path))


# -- classification -------------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    root: int
    height: int
    n2: int
    max_children: int
    is_binary: bool
    is_full: bool
    is_perfect: bool
    is_complete: bool
    is_one_short: bool
    is_branching: bool

    @property
    def is_fbtnp(self) -> bool:
        return self.is_full and not self.is_perfect

    def is_3k_ary(self, k: Optional[int] = None) -> bool:
        """Every internal node has at least 2 and at most ``k`` children."""
        if not self.is_branching:
            return False
        return k is None or self.max_children <= k


def _is_heap_shaped(rv: RootedView) -> bool:
    # breadth-first with children taken in id order, so a level is read left
    # to right under its parents; a lone child sits in the left slot
    gap = False
    queue = [rv.root]
    for v in queue:
        kids = sorted(rv.children[v])
        for filled in (len(kids) >= 1, len(kids) >= 2):
            if filled and gap:
                return False
            if not filled:
                gap = True
        queue.extend(kids)
    return True


def classify(t: Tree, root: int) -> Classification:
    rv = rooted(t, root)
    counts = [len(c) for c in rv.children]
    h = rv.height
    is_binary = max(counts) <= 2
    is_full = all(c in (0, 2) for c in counts)
    is_perfect = is_full and t.n == 2 ** (h + 1) - 1
    is_complete = is_binary and _is_heap_shaped(rv)
    is_one_short = False
    if is_binary and h >= 1 and t.n == 2 ** (h + 1) - 2:
        upper = all(counts[v] == 2 for v in range(t.n) if rv.depth[v] < h - 1)
        ones = sum(1 for v in range(t.n) if rv.depth[v] == h - 1 and counts[v] == 1)
        is_one_short = upper and ones == 1
    return Classification(
        root=rv.root,
        height=h,
        n2=t.degree2_count,
        max_children=max(counts),
        is_binary=is_binary,
        is_full=is_full,
        is_perfect=is_perfect,
        is_complete=is_complete,
        is_one_short=is_one_short,
        is_branching=all(c != 1 for c in counts),
    )


# -- construction helpers ---------------------------------------------------------


def spanning_tree(n: int, edges: Iterable[Sequence[int]]) -> Tree:
    """BFS spanning tree from vertex 0 of a connected simple graph."""
    if n < 1:
        raise BadVertexId("graph needs at least one vertex")
    adj = [set() for _ in range(n)]
    for e in edges:
        u, v = int(e[0]), int(e[1])
        for x in (u, v):
            if not 0 <= x < n:
                raise BadVertexId(f"vertex id {x} outside 0..{n - 1}")
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    par = bfs_parents([sorted(a) for a in adj], 0)
    if len(par) != n:
        raise NotConnected(f"only {len(par)} of {n} vertices reachable from 0")
    return build_tree(n, [(p, v) for v, p in par.items() if p is not None])


def induced_subtree(t: Tree, keep: Iterable[int]):
    """Relabel a connected vertex subset to ``0..m-1``.

    Returns ``(subtree, old_ids)`` where ``old_ids[new] == old``.
    """
    old = sorted(set(keep))
    new_of = {v: i for i, v in enumerate(old)}
    edges = [(new_of[u], new_of[v]) for u, v in t.edges if u in new_of and v in new_of]
    return build_tree(len(old), edges), old
