"""Diametral-path peeling shared by the two FBTNP burners.

Both burners work on a shrinking subtree ``W`` of the input with a set of
unused step slots.  A slot at step ``j`` of a ``K_top``-step plan burns a
ball of radius ``K_top - j``; ``K`` below always means "largest free radius
plus one", the step budget the current iteration behaves as if it had.

One iteration reads the case analysis off the diametral path of ``W``,
places one to three sources, and keeps as the new ``W`` the smallest
subtree containing every vertex those balls miss.  Where that subtree has
a vertex with a single child, one already-burnt neighbour is kept as a
leaf so the remainder stays a tree whose internal nodes all branch.  Each
placement is checked before it is accepted: the balls must burn at least
the iteration's quota and the remainder must be finishable, which the
search establishes recursively.  The case the analysis prescribes is tried
first; the other placements of the same case family follow as fallbacks
and are labelled as such in the audit trail.  Remainders of a handful of
vertices are finished by the exact cover search.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .errors import AlgorithmFailure, BudgetExceeded
from .exact import Budget, cover_with_radii
from .tree import Tree, ball, bfs_distances, induced_subtree, raw_diametral_path

TERMINAL_SIZE = 4
EXACT_SIZE = 18
MAX_NODES = 20_000


@dataclass(frozen=True)
class Iteration:
    """One peeling step as recorded for audit.

    ``sources`` pairs each placed vertex with its 1-based step; ``burned``
    counts vertices removed from the working tree; ``route`` is
    ``"prescribed"``, ``"fallback"``, ``"single"`` or ``"exact"``.
    """

    tag: str
    k: int
    sources: tuple
    quota: int
    burned: int
    route: str
    mode: str

    @property
    def quota_met(self) -> bool:
        return self.burned >= self.quota

    def to_json(self) -> dict:
        return {"tag": self.tag, "k": self.k, "mode": self.mode, "route": self.route,
                "sources": [{"step": s, "vertex": v} for s, v in self.sources],
                "quota": self.quota, "burned": self.burned, "quota_met": self.quota_met}


@dataclass(frozen=True)
class _Cand:
    tag: str
    reqs: tuple  # ((vertex, radius), ...)
    quota: int
    next_mode: str


# -- the path frame ----------------------------------------------------------------


class _Frame:
    """Off-path structure of ``W`` hanging from a fixed path ``u``."""

    def __init__(self, adj, alive, path, root):
        self.u = list(path)
        self.d = len(path) - 1
        self.root = root
        on = set(path)
        parent, order = {}, []
        firsts = [[] for _ in path]
        q = deque()
        for i, ui in enumerate(path):
            for p in adj[ui]:
                if p in alive and p not in on:
                    parent[p] = ui
                    firsts[i].append(p)
                    q.append(p)
        while q:
            x = q.popleft()
            order.append(x)
            for y in adj[x]:
                if y in alive and y not in on and y != parent[x]:
                    parent[y] = x
                    q.append(y)
        kids = {x: [] for x in order}
        size = {x: 1 for x in order}
        height = {x: 0 for x in order}
        for x in reversed(order):
            p = parent[x]
            if p in size:
                kids[p].append(x)
                size[p] += size[x]
                height[p] = max(height[p], height[x] + 1)
        self.kids = {x: sorted(c) for x, c in kids.items()}
        self.size = size
        self.sub_height = height
        self.firsts = [sorted(f) for f in firsts]
        acc, tot = [], 0
        for i in range(len(path)):
            tot += 1 + sum(size[p] for p in self.firsts[i])
            acc.append(tot)
        self.prefix = acc

    def T(self, i: int) -> int:
        """Order of the part of ``W`` on the ``u_0`` side of ``u_{i+1}``."""
        return self.prefix[i]

    def L(self, i: int) -> Optional[int]:
        if not 0 <= i <= self.d or not self.firsts[i]:
            return None
        return min(self.firsts[i], key=lambda p: (-self.sub_height[p], p))

    def Lh(self, i: int) -> int:
        p = self.L(i)
        return 0 if p is None else self.sub_height[p] + 1

    def chain(self, i: int) -> list:
        p = self.L(i)
        out = []
        while p is not None:
            out.append(p)
            ks = self.kids[p]
            p = min(ks, key=lambda c: (-self.sub_height[c], c)) if ks else None
        return out

    def p(self, i: int, l: int) -> Optional[int]:
        c = self.chain(i)
        return c[l - 1] if 1 <= l <= len(c) else None

    def side_heights(self, i: int, l: int) -> list:
        """Heights (from ``p_{i,l}``) of its branches other than the chain."""
        c = self.chain(i)
        if not 1 <= l <= len(c):
            return []
        nxt = c[l] if l < len(c) else None
        return [self.sub_height[x] + 1 for x in self.kids[c[l - 1]] if x != nxt]

    def pendant(self, v: Optional[int], avoid=()) -> Optional[int]:
        if v is None:
            return None
        if v in self.kids:
            pool = self.kids[v]
        else:
            pool = self.firsts[self.u.index(v)]
        leaves = [x for x in pool if self.sub_height[x] == 0 and x not in avoid]
        return min(leaves) if leaves else None

    def at(self, i: int) -> Optional[int]:
        return self.u[i] if 0 <= i <= self.d else None


def _mk(tag, reqs, quota, next_mode):
    if any(v is None or r < 0 for v, r in reqs):
        return None
    return _Cand(tag, tuple(reqs), quota, next_mode)


# -- case analyses -------------------------------------------------------------------


def _sqrt_cases(f: _Frame, K: int) -> list:
    """Prescribed placement first, then the remaining placements of the family."""
    u = f.at
    one = lambda tag, v: _mk(tag, [(v, K - 1)], 2 * K, "sqrt")
    two = lambda tag, a, b: _mk(tag, [(a, K - 1), (b, K - 2)], 4 * K - 4, "sqrt")
    a = one("a", u(K - 1))
    bi = one("b-i", u(K - 1))
    bii = two("b-ii", f.p(K, 1), u(K - 2))
    if f.d >= K - 2 and f.T(K - 2) >= 2 * K - 1:
        first = a
    elif f.Lh(K) <= K - 2:
        first = bi
    else:
        first = bii
    rest = [a, bii, one("u_k", u(K)), two("u_k-1+u_k-2", u(K - 1), u(K - 2)),
            two("p_k,2+u_k-2", f.p(K, 2), u(K - 2))]
    return _order(first, rest)


def _improved_cases(f: _Frame, K: int, adj, alive, reroute: bool = True) -> list:
    u, p = f.at, f.p
    single = lambda tag, v: _mk(tag, [(v, K - 1)], 2 * K + 2, "improved")
    pair = lambda tag, a, b: _mk(tag, [(a, K - 1), (b, K - 2)], 4 * K, "improved")

    def tail(tag, v, extra, quota):
        return _mk(tag, [(v, K - 1)] + extra, quota, "sqrt")

    c1a = single("1a", u(K - 1))
    c1b_short = single("1b-short", u(K - 1))
    c1b_tall = pair("1b-tall", p(K, 1), u(K - 2))
    c1b_wide = pair("1b-mid-wide", p(K, 1), u(K - 2))
    c1b_narrow = tail("1b-mid-narrow", u(K - 1), [(p(K, K - 2), 1)], 4 * K - 2)
    c2a_short = single("2a-short", u(K - 1))
    c2a_narrow = tail("2a-tall-narrow", u(K - 1),
                      [(p(K, K - 1), 1), (f.pendant(p(K, K - 2), avoid=(p(K, K - 1),)), 0)],
                      4 * K - 2)
    c2a_mid = tail("2a-mid", u(K), [(u(1), 1)], 4 * K - 4)
    c2b_root = single("2b-root", u(K - 1))
    c2b_short = single("2b-short", u(K - 1))
    c2b_exact = pair("2b-tall-exact", p(K + 1, 2), u(K - 2))
    c2b_k = pair("2b-k", p(K + 1, 1), u(K - 2))
    c2b_k1 = tail("2b-(k-1)", u(K + 1), [(u(1), 1), (f.pendant(u(2)), 0)], 4 * K - 2)
    c2b_k2 = tail("2b-(k-2)", u(K), [(u(1), 1)], 4 * K - 4)

    first, reroute_to = None, None
    if f.d >= K - 1 and f.T(K - 1) >= 2 * K + 1:
        if f.Lh(K - 1) >= 2:
            first = c1a
        else:
            h = f.Lh(K)
            if h <= K - 2:
                first = c1b_short
            elif h >= K:
                first = c1b_tall
            elif max(f.side_heights(K, 1), default=0) >= 2:
                first = c1b_wide
            else:
                first = c1b_narrow
    else:
        h = f.Lh(K)
        if h >= 2:
            if h <= K - 2:
                first = c2a_short
            elif h >= K:
                wide = any(max(f.side_heights(K, i), default=0) >= 2 for i in range(1, K - 1))
                if wide:
                    reroute_to = ("2a-tall-reroute", K)
                else:
                    first = c2a_narrow
            else:
                first = c2a_mid
        elif u(K + 1) is not None and u(K + 1) == f.root:
            first = c2b_root
        else:
            h1 = f.Lh(K + 1)
            if h1 <= K - 3:
                first = c2b_short
            elif h1 >= K + 1:
                p1 = p(K + 1, 1)
                if p1 is not None and f.T(K) + f.size[p1] == 4 * K + 2:
                    first = c2b_exact
                else:
                    reroute_to = ("2b-tall-reroute", K + 1)
            elif h1 == K:
                first = c2b_k
            elif h1 == K - 1:
                first = c2b_k1
            else:
                first = c2b_k2

    rest = [c1a, c1b_tall, c1b_narrow, c2a_mid, c2a_narrow, c2b_k, c2b_k1, c2b_k2, c2b_exact,
            single("u_k", u(K)), pair("u_k-1+u_k-2", u(K - 1), u(K - 2))]
    out = []
    if reroute_to is not None and reroute:
        tag, i = reroute_to
        new_path = list(reversed(f.chain(i))) + f.u[i:]
        g = _Frame(adj, alive, new_path, f.root)
        for c in _improved_cases(g, K, adj, alive, reroute=False)[:1]:
            out.append(_Cand(f"{tag}>{c.tag}", c.reqs, c.quota, c.next_mode))
    return _order(out[0] if out else first, ([first] if out else []) + rest)


def _order(first, rest) -> list:
    out, seen = [], set()
    for i, c in enumerate([first] + rest):
        if c is None or c.reqs in seen:
            continue
        seen.add(c.reqs)
        out.append((c, i == 0))
    return out


# -- the search ------------------------------------------------------------------------


class Peeler:
    """Backtracking driver; see the module docstring."""

    def __init__(self, t: Tree, root: int, k_top: int, mode: str, max_nodes: int = MAX_NODES):
        self.t = t
        self.adj = t.adjacency
        self.k_top = k_top
        self.root = root
        self.mode = mode
        self.nodes = 0
        self.max_nodes = max_nodes
        self._failed = set()

    # remainder bookkeeping
    def _steiner(self, alive: set, uncovered: set) -> set:
        keep = set(alive)
        deg = {v: sum(1 for w in self.adj[v] if w in keep) for v in keep}
        q = deque(v for v in keep if deg[v] <= 1 and v not in uncovered)
        while q and len(keep) > 1:
            v = q.popleft()
            if v not in keep or v in uncovered:
                continue
            keep.discard(v)
            for w in self.adj[v]:
                if w in keep:
                    deg[w] -= 1
                    if deg[w] <= 1 and w not in uncovered:
                        q.append(w)
        return keep

    def _reroot(self, alive: set, keep: set, root: int):
        """Choose the remainder's root and patch single-child vertices."""
        if root in keep:
            new_root = root
        else:
            dist = bfs_distances(self.adj, root, alive)
            new_root = min(keep, key=lambda v: (dist[v], v))
        keep = set(keep)
        # orientation inside ``alive`` from the old root decides "other child"
        par = {root: None}
        q = deque([root])
        while q:
            x = q.popleft()
            for y in self.adj[x]:
                if y in alive and y not in par:
                    par[y] = x
                    q.append(y)
        added = []
        for v in sorted(keep):
            inner = [w for w in self.adj[v] if w in keep and w != par[v]]
            if len(inner) != 1:
                continue
            spare = [w for w in self.adj[v] if w in alive and w not in keep and w != par[v]]
            if not spare and v == new_root and par[v] is not None:
                spare = [par[v]]
            if spare:
                added.append(min(spare))
        keep.update(added)
        return keep, new_root

    def _assign(self, free: tuple, reqs) -> Optional[list]:
        """Map requirements to free radii (largest requirement first)."""
        pool = sorted(free)
        out = []
        for v, r in sorted(reqs, key=lambda x: -x[1]):
            slot = next((x for x in pool if x >= r), None)
            if slot is None:
                return None
            pool.remove(slot)
            out.append((v, slot))
        return out

    # main recursion
    def run(self) -> tuple:
        alive = set(range(self.t.n))
        free = tuple(range(self.k_top - 1, -1, -1))
        got = self._go(frozenset(alive), self.root, free, self.mode)
        if got is None:
            raise AlgorithmFailure(
                f"no {self.mode} peeling finishes within {self.k_top} steps")
        return got

    def _go(self, alive: frozenset, root: int, free: tuple, mode: str):
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise AlgorithmFailure(f"peeling search exceeded {self.max_nodes} nodes")
        if not alive:
            return []
        if not free:
            return None
        key = (alive, root, free, mode)
        if key in self._failed:
            return None
        K = free[0] + 1
        path = raw_diametral_path(self.adj, alive, root)
        d = len(path) - 1
        if (d + 1) // 2 <= K - 1:
            c = path[d // 2]
            return [self._record("single", K, [(c, free[0])], 0, len(alive), "single", mode)]
        if len(alive) <= TERMINAL_SIZE:
            got = self._exact(alive, free, K, mode)
            if got is not None:
                return got
        f = _Frame(self.adj, alive, path, root)
        cands = _sqrt_cases(f, K) if mode == "sqrt" else _improved_cases(f, K, self.adj, alive)
        for cand, prescribed in cands:
            slots = self._assign(free, cand.reqs)
            if slots is None:
                continue
            covered = ball(self.adj, slots, alive)
            uncovered = alive - covered
            if uncovered:
                keep = self._steiner(set(alive), uncovered)
                keep, new_root = self._reroot(set(alive), keep, root)
            else:
                keep, new_root = set(), root
            burned = len(alive) - len(keep)
            if burned < cand.quota:
                continue
            used = {r for _, r in slots}
            rest = tuple(r for r in free if r not in used)
            sub = self._go(frozenset(keep), new_root, rest, cand.next_mode)
            if sub is not None:
                route = "prescribed" if prescribed else "fallback"
                it = self._record(cand.tag, K, slots, cand.quota, burned, route, mode)
                return [it] + sub
        if len(alive) <= EXACT_SIZE:
            got = self._exact(alive, free, K, mode)
            if got is not None:
                return got
        self._failed.add(key)
        return None

    def _exact(self, alive, free, K, mode):
        sub, old = induced_subtree(self.t, alive)
        try:
            centers = cover_with_radii(sub, free, Budget(max_nodes=200_000, max_seconds=5.0))
        except BudgetExceeded:
            return None
        if centers is None:
            return None
        slots = [(old[c], r) for c, r in zip(centers, sorted(free, reverse=True)) if c is not None]
        return [self._record("exact", K, slots, 0, len(alive), "exact", mode)]

    def _record(self, tag, K, slots, quota, burned, route, mode) -> Iteration:
        src = tuple(sorted((self.k_top - r, v) for v, r in slots))
        return Iteration(tag, K, src, quota, burned, route, mode)


def plan_from_iterations(k_top: int, iterations) -> list:
    plan = [None] * k_top
    for it in iterations:
        for step, v in it.sources:
            plan[step - 1] = v
    return plan
