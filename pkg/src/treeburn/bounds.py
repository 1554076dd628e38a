"""Constructive burners with certified length bounds.

Every function returns a :class:`BoundResult` whose sequence has been run
through the strict validator before it is handed back; a burner that
cannot meet its own bound raises :class:`AlgorithmFailure` instead of
returning an unchecked sequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .burning import BurningSequence, is_valid_burning, pad_sequence, repair_sequence
from .errors import AlgorithmFailure, IsPerfect, NotComplete, NotEligible, NotFbtnp, NotPerfect
from .generators import augment_degree2
from .peeling import Iteration, Peeler, plan_from_iterations
from .tree import RootedView, Tree, classify, rooted

__all__ = [
    "BoundResult",
    "ceil_sqrt",
    "sqrt_bound",
    "improved_bound",
    "general_bound",
    "bessy_bound",
    "burn_perfect",
    "burn_complete",
    "burn_fbtnp_height",
    "burn_fbtnp_sqrt_n",
    "burn_fbtnp_improved",
    "burn_general_tree",
    "closed_form",
    "audit",
]

IMPROVED_MIN_N = 18
SQRT_QUOTAS = {"single": 2, "pair": 4}


def ceil_sqrt(x) -> int:
    """``ceil(sqrt(x))`` for a non-negative integer or Fraction, exactly."""
    from fractions import Fraction

    x = Fraction(x)
    if x <= 0:
        return 0
    r = math.isqrt(x.numerator // x.denominator)
    while Fraction(r * r) < x:
        r += 1
    while r > 0 and Fraction((r - 1) ** 2) >= x:
        r -= 1
    return r


def sqrt_bound(n: int) -> int:
    return ceil_sqrt(n)


def improved_bound(n: int) -> int:
    return ceil_sqrt(n + 9) - 1


def general_bound(n: int, n2: int) -> int:
    return ceil_sqrt(n + n2 + 8) - 1


def bessy_bound(n: int, n2: int) -> int:
    """``ceil(sqrt(n + n2 + 1/4) + 1/2)``: the least ``m`` with ``m^2 - m >= n + n2``."""
    m = 1
    while m * m - m < n + n2:
        m += 1
    return m


@dataclass(frozen=True)
class BoundResult:
    sequence: BurningSequence
    claimed_bound: int
    bound_name: str
    steps_used: int
    iterations: tuple = ()
    comparison: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "sequence": list(self.sequence.sources),
            "claimed_bound": self.claimed_bound,
            "bound_name": self.bound_name,
            "steps_used": self.steps_used,
            "iterations": [it.to_json() for it in self.iterations],
            "comparison": dict(self.comparison),
        }


def _finish(t: Tree, seq, claimed: int, name: str, iterations=(), comparison=None) -> BoundResult:
    seq = seq if isinstance(seq, BurningSequence) else BurningSequence(tuple(seq))
    verdict = is_valid_burning(t, seq)
    if not verdict:
        raise AlgorithmFailure(f"{name}: emitted sequence is invalid ({verdict.reason})")
    if seq.k > claimed:
        raise AlgorithmFailure(f"{name}: {seq.k} steps exceed the bound {claimed}")
    return BoundResult(seq, claimed, name, seq.k, tuple(iterations), dict(comparison or {}))


def _view(t) -> RootedView:
    if isinstance(t, RootedView):
        return t
    return rooted(t, 0)


# -- closed forms ----------------------------------------------------------------------


def burn_perfect(rv: RootedView) -> BoundResult:
    rv = _view(rv)
    if not classify(rv.tree, rv.root).is_perfect:
        raise NotPerfect("tree is not a perfect binary tree under this root")
    h = rv.height
    seq = pad_sequence(rv.tree, (rv.root,), h + 1)
    return _finish(rv.tree, seq, h + 1, "perfect")


def burn_complete(rv: RootedView) -> BoundResult:
    """Complete binary tree in heap layout.

    One leaf short of perfect: the root alone, padded to ``h+1`` steps.
    Otherwise the right-most path ``u_1, ..., u_{h-1}`` below the root ends at
    a vertex with no children, and the sequence is the root's left child,
    then the left siblings ``x_2, ..., x_{h-1}`` of ``u_2, ..., u_{h-1}``,
    then ``u_{h-1}``: ``h`` steps.
    """
    rv = _view(rv)
    cl = classify(rv.tree, rv.root)
    if cl.is_perfect:
        raise IsPerfect("perfect trees are handled by burn_perfect")
    if not cl.is_complete:
        raise NotComplete("tree is not complete under this root")
    t, h = rv.tree, rv.height
    if cl.is_one_short or h <= 1:
        seq = pad_sequence(t, (rv.root,), h + 1)
        return _finish(t, seq, h + 1, "complete-one-short" if cl.is_one_short else "complete")
    spine = [rv.root]
    while len(spine) < h:
        spine.append(max(rv.children[spine[-1]]))
    seq = [min(rv.children[rv.root])]
    seq += [min(rv.children[spine[i - 1]]) for i in range(2, h)]
    seq.append(spine[h - 1])
    return _finish(t, seq, h, "complete")


def closed_form(rv: RootedView) -> Optional[tuple]:
    rv = _view(rv)
    cl = classify(rv.tree, rv.root)
    h = rv.height
    if cl.is_perfect:
        return h + 1, "T1"
    if cl.is_complete and cl.is_one_short:
        return h + 1, "T2"
    if cl.is_complete and h >= 2:
        return h, "T3"
    return None


# -- height recursion ---------------------------------------------------------------------


def _heights(rv: RootedView) -> list:
    h = [0] * rv.tree.n
    for v in sorted(range(rv.tree.n), key=lambda x: -rv.depth[x]):
        if rv.children[v]:
            h[v] = 1 + max(h[c] for c in rv.children[v])
    return h


def _sizes(rv: RootedView) -> list:
    s = [1] * rv.tree.n
    for v in sorted(range(rv.tree.n), key=lambda x: -rv.depth[x]):
        for c in rv.children[v]:
            s[v] += s[c]
    return s


def burn_fbtnp_height(rv: RootedView) -> BoundResult:
    """At most ``h`` steps for a full, non-perfect binary tree of height ``h``.

    Of the root's children pick one of height ``h-1`` whose sibling is not a
    perfect tree of height ``h-1``; lit first, its ball of radius ``h-1``
    swallows its whole subtree.  The sibling subtree is shorter or
    imperfect, so it fits in the remaining ``h-1`` steps by the same rule,
    or by a single source at its root when it is perfect.
    """
    rv = _view(rv)
    if not classify(rv.tree, rv.root).is_fbtnp:
        raise NotFbtnp("tree is not a full binary tree that is not perfect")
    hs, sz = _heights(rv), _sizes(rv)
    perfect = lambda v: sz[v] == 2 ** (hs[v] + 1) - 1
    plan, v = [], rv.root
    while not perfect(v):
        a, b = rv.children[v]
        if hs[a] == hs[v] - 1 and not (perfect(b) and hs[b] == hs[v] - 1):
            first, v = a, b
        else:
            first, v = b, a
        plan.append(first)
    plan.append(v)
    h = rv.height
    seq, _ = repair_sequence(rv.tree, plan + [None] * (h - len(plan)))
    return _finish(rv.tree, seq, h, "height")


# -- diametral-path peeling ------------------------------------------------------------------


def _gate(rv: RootedView) -> None:
    cl = classify(rv.tree, rv.root)
    if cl.is_perfect:
        raise NotEligible("perfect binary trees are burnt by burn_perfect")
    if rv.tree.n > 1 and not cl.is_branching:
        raise NotEligible("every internal node must have at least two children")


def _peel(t: Tree, root: int, k: int, mode: str, name: str, comparison=None) -> BoundResult:
    iterations = Peeler(t, root, k, mode).run()
    seq, _ = repair_sequence(t, plan_from_iterations(k, iterations))
    return _finish(t, seq, k, name, iterations, comparison)


def burn_fbtnp_sqrt_n(rv: RootedView) -> BoundResult:
    """At most ``ceil(sqrt(n))`` steps by peeling along the diametral path.

    Accepts any non-perfect rooted tree whose internal nodes all have two or
    more children; full binary trees are the special case.
    """
    rv = _view(rv)
    _gate(rv)
    return _peel(rv.tree, rv.root, sqrt_bound(rv.tree.n), "sqrt", "sqrt")


def burn_fbtnp_improved(rv: RootedView) -> BoundResult:
    """At most ``ceil(sqrt(n+9)) - 1`` steps when ``n >= 18``.

    Smaller inputs are passed to :func:`burn_fbtnp_sqrt_n`, whose bound is
    the one reported.
    """
    rv = _view(rv)
    _gate(rv)
    n = rv.tree.n
    if n < IMPROVED_MIN_N:
        return burn_fbtnp_sqrt_n(rv)
    return _peel(rv.tree, rv.root, improved_bound(n), "improved", "improved")


def burn_general_tree(t: Tree, root: int = 0) -> BoundResult:
    """Any tree: hang a pendant on all but one degree-2 vertex, burn, project.

    A source that landed on an added pendant moves to the pendant's
    attachment vertex at the same step; its ball in the original tree
    contains what the pendant's ball reached there.  Collisions are
    resolved by :func:`repair_sequence`.
    """
    if isinstance(t, RootedView):
        root, t = t.root, t.tree
    n, n2 = t.n, t.degree2_count
    claimed = general_bound(n, n2)
    comparison = {"bessy": bessy_bound(n, n2), "two_n": ceil_sqrt(2 * n + 6) - 1, "n2": n2}
    if 3 * n2 <= n:
        from fractions import Fraction

        comparison["four_thirds_n"] = ceil_sqrt(Fraction(4 * n, 3) + 8) - 1
    aug = augment_degree2(t, root)
    tp = aug.tree
    mode = "improved" if tp.n >= IMPROVED_MIN_N else "sqrt"
    k = claimed
    iterations = Peeler(tp, aug.root, k, mode).run()
    plan = plan_from_iterations(k, iterations)
    projected = [None if v is None else aug.project(v) for v in plan]
    seq, _ = repair_sequence(t, projected)
    return _finish(t, seq, claimed, "general", iterations, comparison)


# -- audit -------------------------------------------------------------------------------------


def audit(result: BoundResult) -> list:
    """One record per iteration: the case tag, its quota, and whether it held.

    Iterations reached by delegating to the square-root peeling carry that
    family's quotas (``2k``, ``4k-4``); the improved family uses
    ``2k+2``, ``4k``, ``4k-2`` and ``4k-4``.  Terminal single-ball and
    exact-cover iterations have no quota.
    """
    return [{"tag": it.tag, "k": it.k, "mode": it.mode, "quota": it.quota,
             "burned": it.burned, "ok": it.quota_met, "route": it.route}
            for it in result.iterations]
