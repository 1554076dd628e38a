"""Exact burning number by branch and bound over the ball-cover form.

The search roots the tree at a center and repeatedly takes the deepest
uncovered vertex ``v``.  Some ball must cover ``v``; for a ball of radius
``r`` the center can be fixed at the ancestor of ``v`` at distance ``r``
(or the root when ``v`` is shallower), because that ball contains every
vertex of depth <= depth(v) that any other radius-``r`` ball through ``v``
contains, and nothing deeper than ``v`` is uncovered.  So the branching is
over radii only.  Subtrees pruned when the largest possible coverage of the
unused radii cannot reach the uncovered count.  Cover witnesses are then
made strictly valid with :func:`repair_sequence`, which is exact at the
minimum ``k`` (a shorter strict sequence would contradict minimality).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .burning import BurningSequence, repair_sequence
from .errors import BudgetExceeded
from .tree import Tree, raw_diametral_path, rooted

__all__ = ["Budget", "OracleResult", "burning_number_exact", "decide_burnable",
           "cover_with_radii"]


@dataclass(frozen=True)
class Budget:
    max_nodes: int = 10_000_000
    max_seconds: float = 60.0


@dataclass(frozen=True)
class OracleResult:
    b: int
    witness: BurningSequence
    nodes_explored: int
    elapsed: float

    def to_json(self) -> dict:
        return {"b": self.b, "witness": list(self.witness.sources),
                "nodes_explored": self.nodes_explored, "elapsed": round(self.elapsed, 6)}


class _CoverSearch:
    def __init__(self, t: Tree, budget: Budget):
        self.t = t
        self.n = t.n
        self.budget = budget
        self.nodes = 0
        self.t0 = time.perf_counter()
        path = raw_diametral_path(t.adjacency)
        self.rv = rooted(t, path[len(path) // 2])
        dm = t.distance_matrix
        self.maxr = int(dm.max()) if self.n > 1 else 0
        # ball[c][r] as int bitmask over vertex ids
        self.ball = []
        for c in range(self.n):
            order = np.argsort(dm[c], kind="stable")
            masks, mask, idx = [], 0, 0
            for r in range(self.maxr + 1):
                while idx < self.n and dm[c, order[idx]] <= r:
                    mask |= 1 << int(order[idx])
                    idx += 1
                masks.append(mask)
            self.ball.append(masks)
        self.maxcov = [max(bin(self.ball[c][r]).count("1") for c in range(self.n))
                       for r in range(self.maxr + 1)]
        depth = self.rv.depth
        self.by_depth = sorted(range(self.n), key=lambda v: (-depth[v], v))
        self.failed = set()

    def anc(self, v: int, r: int) -> int:
        for _ in range(r):
            p = self.rv.parent[v]
            if p is None:
                break
            v = p
        return v

    def cov(self, r: int) -> int:
        return self.maxcov[min(r, self.maxr)]

    def bmask(self, c: int, r: int) -> int:
        return self.ball[c][min(r, self.maxr)]

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise BudgetExceeded(f"node budget {self.budget.max_nodes} exhausted", nodes=self.nodes)
        if self.nodes % 4096 == 0 and time.perf_counter() - self.t0 > self.budget.max_seconds:
            raise BudgetExceeded(f"time budget {self.budget.max_seconds}s exhausted", nodes=self.nodes)

    def run(self, radii: Sequence[int]) -> Optional[dict]:
        """Centers covering V with one ball per radius, as ``{index: center}``."""
        radii = sorted(radii, reverse=True)
        full = (1 << self.n) - 1
        return self._go(full, tuple(radii), {}, list(range(len(radii))))

    def _go(self, unc: int, radii: tuple, chosen: dict, idx: list):
        self._tick()
        if unc == 0:
            return dict(chosen)
        if not radii:
            return None
        key = (unc, radii)
        if key in self.failed:
            return None
        if sum(self.cov(r) for r in radii) < bin(unc).count("1"):
            self.failed.add(key)
            return None
        v = next(x for x in self.by_depth if unc >> x & 1)
        tried = set()
        for pos, r in enumerate(radii):
            if r in tried:
                continue
            tried.add(r)
            c = self.anc(v, r)
            chosen[idx[pos]] = c
            rest = radii[:pos] + radii[pos + 1:]
            got = self._go(unc & ~self.bmask(c, r), rest, chosen, idx[:pos] + idx[pos + 1:])
            if got is not None:
                return got
            del chosen[idx[pos]]
        self.failed.add(key)
        return None


def cover_with_radii(t: Tree, radii: Sequence[int], budget: Budget = Budget()):
    """Centers, in the order of ``radii`` sorted descending, whose balls cover V.

    Returns a list of centers aligned with ``sorted(radii, reverse=True)``
    or None when no cover exists.  Centers may repeat, and an entry is None
    when the cover was complete before that ball was needed.
    """
    got = _CoverSearch(t, budget).run(radii)
    if got is None:
        return None
    return [got.get(i) for i in range(len(radii))]


def _decide(t: Tree, k: int, search: _CoverSearch) -> Optional[BurningSequence]:
    if k < 1:
        return None
    if k == 1:
        return BurningSequence((0,)) if t.n == 1 else None
    got = search.run(range(k - 1, -1, -1))
    if got is None:
        return None
    seq, _ = repair_sequence(t, [got.get(i) for i in range(k)])
    return seq


def decide_burnable(t: Tree, k: int, budget: Budget = Budget()) -> Optional[BurningSequence]:
    """A strictly valid burning sequence with at most ``k`` sources, or None.

    The sequence is shorter than ``k`` only when the tree burns out before
    step ``k``, which cannot happen at ``k == b(T)``.
    """
    return _decide(t, k, _CoverSearch(t, budget))


def burning_number_exact(t: Tree, budget: Budget = Budget()) -> OracleResult:
    t0 = time.perf_counter()
    search = _CoverSearch(t, budget)
    k = 1
    try:
        while True:
            seq = _decide(t, k, search)
            if seq is not None:
                return OracleResult(k, seq, search.nodes, time.perf_counter() - t0)
            k += 1
    except BudgetExceeded as exc:
        from .bounds import burn_general_tree  # deferred: bounds imports this module

        upper = burn_general_tree(t, 0).steps_used
        raise BudgetExceeded(f"{exc} while testing k={k}", upper_bound=upper,
                             nodes=search.nodes) from None
