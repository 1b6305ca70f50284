"""Learners, finite-horizon verdicts, identifiability, and canonical priors.

A learner folds a (possibly biased) revision method over a data sequence
and conjectures the most plausible worlds after each step.  On finite data
the limit condition is replaced by its only checkable surrogate: the run
succeeds iff the final conjecture is exactly the singleton actual world.
The step at which the conjecture last stabilised is recorded as well, so a
stable-tail analysis remains possible from the same trajectory.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .bias import BiasedMethodSpec, with_budget, make_step
from .core import (
    EpistemicSpace,
    PlausibilityOrder,
    PlausibilitySpace,
    WorldId,
    worlds_in,
)
from .streams import DataSequence


@dataclass(frozen=True)
class TrajectoryStep:
    position: int
    conjecture: frozenset[WorldId]
    revised: bool
    budget_remaining: float | None = None


@dataclass(frozen=True)
class Trajectory:
    """Conjecture after every consumed observation, starting with the prior's."""

    steps: tuple[TrajectoryStep, ...]

    @property
    def final_conjecture(self) -> frozenset[WorldId]:
        return self.steps[-1].conjecture

    @property
    def revisions_executed(self) -> int:
        return sum(1 for s in self.steps if s.revised)

    def conjectures(self) -> list[frozenset[WorldId]]:
        return [s.conjecture for s in self.steps]


@dataclass(frozen=True)
class Verdict:
    success: bool
    converge_step: int | None
    revisions_executed: int


def run_learner(
    spec: BiasedMethodSpec,
    ps0: PlausibilitySpace,
    seq: DataSequence,
    rng: np.random.Generator | None = None,
) -> Trajectory:
    """Fold ``spec`` over ``seq`` from ``ps0``, recording each conjecture."""
    step = make_step(spec, ps0.space, seq, rng)
    budgeted = None
    if spec.budget is not None:
        step = budgeted = with_budget(step, spec.budget)

    def snapshot(ps: PlausibilitySpace, pos: int, revised: bool) -> TrajectoryStep:
        remaining = budgeted.remaining if budgeted is not None else None
        return TrajectoryStep(pos, frozenset(worlds_in(ps.conjecture)), revised, remaining)

    ps = ps0
    steps = [snapshot(ps, 0, False)]
    for i, o in enumerate(seq):
        ps, revised = step(ps, i, o)
        steps.append(snapshot(ps, i + 1, revised))
    return Trajectory(tuple(steps))


def verdict(traj: Trajectory, actual: WorldId) -> Verdict:
    """Judge a trajectory: success iff the final conjecture is exactly ``{actual}``."""
    target = frozenset((actual,))
    success = traj.final_conjecture == target
    converge = None
    if success:
        k = len(traj.steps) - 1
        while k > 0 and traj.steps[k - 1].conjecture == target:
            k -= 1
        converge = traj.steps[k].position
    executed = sum(1 for s in traj.steps if s.revised)
    return Verdict(success, converge, executed)


def is_identifiable(space: EpistemicSpace) -> bool:
    """True iff all world signatures are pairwise distinct.

    Distinct signatures are sufficient for finite spaces (conditioning from
    a signature-respecting prior converges: survivors of a sound and
    complete sequence are exactly the signature-supersets of the actual
    world) and necessary (signature-equal worlds receive identical
    treatment from every revision step on sound input).
    """
    sigs = {space.signature(s) for s in range(space.n_states)}
    return len(sigs) == space.n_states


def canonical_prior(space: EpistemicSpace) -> PlausibilityOrder:
    """Strict linear prior that puts signature-subsets before their supersets.

    Whenever ``sig(u)`` is a proper subset of ``sig(v)``, ``u`` is ranked
    strictly more plausible; all remaining freedom is resolved by smallest
    world index first.  Computed as a topological sort of the proper-subset
    relation with a min-index heap.
    """
    n = space.n_states
    sigs = [space.signature(s) for s in range(n)]
    indegree = [0] * n
    succs: list[list[int]] = [[] for _ in range(n)]
    for u in range(n):
        for v in range(n):
            if u != v and sigs[u] < sigs[v]:
                succs[u].append(v)
                indegree[v] += 1
    ready = [u for u in range(n) if indegree[u] == 0]
    heapq.heapify(ready)
    ranks: dict[int, int] = {}
    while ready:
        u = heapq.heappop(ready)
        ranks[u] = len(ranks)
        for v in succs[u]:
            indegree[v] -= 1
            if indegree[v] == 0:
                heapq.heappush(ready, v)
    return PlausibilityOrder.from_ranks(ranks)
