"""The burning process: step simulation and the two validity checks.

Step ``i`` first ignites ``x_i`` (it must still be unburnt), then fire
spreads one hop from every vertex that was burnt at the end of step
``i - 1``.  A freshly ignited source therefore starts spreading one step
later, and after ``k`` steps source ``x_i`` has burnt exactly the ball
``N_{k-i}[x_i]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import BadVertexId
from .tree import Tree, ball, bfs_distances

__all__ = [
    "BurningSequence",
    "BurnStep",
    "BurnTrace",
    "Verdict",
    "simulate",
    "is_valid_burning",
    "is_valid_cover",
    "pad_sequence",
    "repair_sequence",
]


@dataclass(frozen=True)
class BurningSequence:
    sources: tuple

    def __post_init__(self):
        src = tuple(int(v) for v in self.sources)
        if len(set(src)) != len(src):
            raise ValueError(f"burning sequence repeats a vertex: {src}")
        object.__setattr__(self, "sources", src)

    @property
    def k(self) -> int:
        return len(self.sources)

    def __len__(self):
        return len(self.sources)

    def __iter__(self):
        return iter(self.sources)

    def __getitem__(self, i):
        return self.sources[i]


def _sources(s) -> tuple:
    return tuple(s.sources) if isinstance(s, BurningSequence) else tuple(int(v) for v in s)


def _check_ids(t: Tree, src) -> None:
    for v in src:
        if not 0 <= v < t.n:
            raise BadVertexId(f"source {v} outside 0..{t.n - 1}")


@dataclass(frozen=True)
class BurnStep:
    source: int
    ignited: bool  # False when the source was already burnt at its step
    spread: frozenset


@dataclass(frozen=True)
class BurnTrace:
    steps: tuple
    burned_after: tuple

    @property
    def k(self) -> int:
        return len(self.steps)

    @property
    def burned(self) -> frozenset:
        return self.burned_after[-1] if self.burned_after else frozenset()

    @property
    def collisions(self) -> list:
        """1-based steps whose source was already burnt when scheduled."""
        return [i + 1 for i, st in enumerate(self.steps) if not st.ignited]

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "steps": [
                {"step": i + 1, "source": st.source, "ignited": st.ignited,
                 "spread": sorted(st.spread)}
                for i, st in enumerate(self.steps)
            ],
            "burned_after": [len(b) for b in self.burned_after],
        }


def simulate(t: Tree, s) -> BurnTrace:
    """Run ``len(s)`` steps of the burning process.

    A source that is already burnt at its step is recorded with
    ``ignited=False`` and otherwise skipped (the lenient reading); strict
    callers check :attr:`BurnTrace.collisions`.
    """
    src = _sources(s)
    _check_ids(t, src)
    b = _Burner(t)
    steps, after = [], []
    for x in src:
        ignited, spread = b.step(x)
        steps.append(BurnStep(x, ignited, frozenset(spread)))
        after.append(frozenset(b.burned))
    return BurnTrace(tuple(steps), tuple(after))


@dataclass(frozen=True)
class Verdict:
    valid: bool
    reason: Optional[str] = None

    def __bool__(self):
        return self.valid


def is_valid_burning(t: Tree, s, strict: bool = True) -> Verdict:
    src = _sources(s)
    _check_ids(t, src)
    if not src:
        return Verdict(False, "NoSources")
    if len(set(src)) != len(src) and strict:
        return Verdict(False, "DuplicateSource")
    trace = simulate(t, src)
    if strict and trace.collisions:
        return Verdict(False, f"SourceAlreadyBurnt(step={trace.collisions[0]})")
    if len(trace.burned) != t.n:
        return Verdict(False, "UnburnedRemain")
    return Verdict(True)


def is_valid_cover(t: Tree, s) -> bool:
    """Ball-cover form: radii ``k-1..0`` cover V and ``d(x_i, x_j) >= j - i``."""
    src = _sources(s)
    _check_ids(t, src)
    k = len(src)
    if k == 0:
        return False
    for i in range(k - 1):
        dist = bfs_distances(t.adjacency, src[i])
        for j in range(i + 1, k):
            if dist[src[j]] < j - i:
                return False
    covered = ball(t.adjacency, [(x, k - 1 - i) for i, x in enumerate(src)])
    return len(covered) == t.n


class _Burner:
    """Incremental burning state; ``step`` ignites (if unburnt) then spreads."""

    def __init__(self, t: Tree):
        self.adj = t.adjacency
        self.n = t.n
        self.burned = set()
        self.frontier = set()
        self._next_free = 0

    def done(self) -> bool:
        return len(self.burned) == self.n

    def smallest_unburnt(self) -> int:
        while self._next_free in self.burned:
            self._next_free += 1
        return self._next_free

    def step(self, x: int) -> tuple:
        ignited = x not in self.burned
        if ignited:
            self.burned.add(x)
        spread = set()
        for v in self.frontier:
            for w in self.adj[v]:
                if w not in self.burned:
                    self.burned.add(w)
                    spread.add(w)
        self.frontier = spread | ({x} if ignited else set())
        return ignited, spread


def repair_sequence(t: Tree, plan: Sequence[Optional[int]]) -> tuple:
    """Turn a step plan into a strictly valid sequence.

    ``plan[j]`` is the intended source at step ``j + 1`` or None.  Missing or
    already-burnt entries are replaced by the smallest unburnt vertex; once
    everything is burnt the sequence stops early.  A replaced source's ball
    lies inside the ball of whichever earlier source burnt it, so coverage
    never shrinks.

    Returns ``(BurningSequence, replaced_steps)`` with 1-based step numbers.
    """
    _check_ids(t, [x for x in plan if x is not None])
    b = _Burner(t)
    out, replaced = [], []
    for j, x in enumerate(plan):
        if b.done():
            break
        if x is None or x in b.burned:
            if x is not None:
                replaced.append(j + 1)
            x = b.smallest_unburnt()
        b.step(x)
        out.append(x)
    return BurningSequence(tuple(out)), replaced


def pad_sequence(t: Tree, s, k: int) -> BurningSequence:
    """Extend ``s`` to ``k`` steps with the smallest unburnt vertex each step.

    The given prefix is kept verbatim; padding stops early once every vertex
    is burnt, so the result may be shorter than ``k``.
    """
    src = _sources(s)
    if k < len(src):
        raise ValueError(f"target length {k} shorter than sequence ({len(src)})")
    _check_ids(t, src)
    b = _Burner(t)
    for x in src:
        b.step(x)
    out = list(src)
    while len(out) < k and not b.done():
        x = b.smallest_unburnt()
        b.step(x)
        out.append(x)
    return BurningSequence(tuple(out))


def ball_sizes(t: Tree, s: Iterable[int]) -> list:
    """``|N_{k-i}[x_i]|`` for each source, in order."""
    src = _sources(s)
    k = len(src)
    return [len(ball(t.adjacency, [(x, k - 1 - i)])) for i, x in enumerate(src)]
