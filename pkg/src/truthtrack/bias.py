"""Bias transformations over iterated revision, plus the resource budget.

Confirmation bias delays revision until an observation has recurred often
enough; framing bias revises by a perceived subset of each observation;
anchoring bias revises by the currently most plausible observation-worlds
and forces a unique minimum after every step.  A resource budget halves on
every executed revision and blocks further revision once it drops below its
floor.

All folds are pure functions of their inputs and the supplied rng; any
per-run mutable state (occurrence counts, budget) lives inside the step
closure built for that run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Mapping

import numpy as np

from .core import EpistemicSpace, ObsIndex, PlausibilitySpace, min_worlds
from .revision import Method, one_step, one_step_plus
from .streams import (
    DataSequence,
    FramedSequence,
    FramingMode,
    frame_sequence,
)

#: per-observable revision threshold; unmapped indices default to 1 (unbiased)
StubbornnessMap = Mapping[ObsIndex, int]


class CountMode(str, Enum):
    """How occurrence counts are compared against the stubbornness threshold.

    INCLUSIVE counts the current observation itself, so threshold 1 revises
    at first sight exactly like an unbiased agent.  STRICT counts only the
    preceding prefix, which makes even threshold 1 skip first occurrences;
    it is kept as a fidelity switch.
    """

    INCLUSIVE = "inclusive"
    STRICT = "strict"


class Bias(str, Enum):
    NONE = "none"
    CB = "cb"
    FR = "fr"
    AB = "ab"


@dataclass(frozen=True)
class ResourceBudget:
    """Revision allowance: halved per executed revision, blocking below ``floor``."""

    initial: float = 100.0
    floor: float = 1.0

    def __post_init__(self) -> None:
        if self.initial < 0:
            raise ValueError("initial budget must be >= 0")
        if self.floor <= 0:
            raise ValueError("budget floor must be > 0")


@dataclass(frozen=True)
class BiasedMethodSpec:
    """A base revision operator plus the bias configuration applied to it."""

    base: Method
    bias: Bias = Bias.NONE
    stubbornness: StubbornnessMap = field(default_factory=dict)
    count_mode: CountMode = CountMode.INCLUSIVE
    framing: FramingMode = FramingMode.DYNAMIC
    fair_prefix: int = 0
    budget: ResourceBudget | None = None

    @property
    def label(self) -> str:
        name = self.base.value
        if self.bias is Bias.CB:
            name += "+cb" if self.count_mode is CountMode.INCLUSIVE else "+cb_strict"
        elif self.bias is Bias.FR:
            name += f"+fr_{self.framing.value}"
            if self.framing is FramingMode.FAIR:
                name += str(self.fair_prefix)
        elif self.bias is Bias.AB:
            name += "+ab"
        if self.budget is not None:
            name += "-res"
        return name


#: advances one observation: (state, position, observable index) -> (state, revised?)
StepFn = Callable[[PlausibilitySpace, int, ObsIndex], tuple[PlausibilitySpace, bool]]


def _cb_fire_flags(
    seq: DataSequence, stubbornness: StubbornnessMap, mode: CountMode
) -> list[bool]:
    # Precomputed from the raw sequence so that firing does not depend on
    # whether earlier steps were blocked by a budget.
    counts: dict[int, int] = {}
    flags = []
    for o in seq:
        counts[o] = counts.get(o, 0) + 1
        n = counts[o] if mode is CountMode.INCLUSIVE else counts[o] - 1
        flags.append(n >= stubbornness.get(o, 1))
    return flags


def make_step(
    spec: BiasedMethodSpec,
    space: EpistemicSpace,
    seq: DataSequence,
    rng: np.random.Generator | None,
) -> StepFn:
    """Build the per-observation step function for a biased method.

    FR framing (other than identity) and AB draws consume ``rng``; frames
    for the whole sequence are drawn up front, before any folding.
    """
    base = one_step(spec.base)
    extensions = space.observables

    if spec.bias is Bias.NONE:

        def step(ps: PlausibilitySpace, i: int, o: ObsIndex) -> tuple[PlausibilitySpace, bool]:
            return base(ps, extensions[o]), True

    elif spec.bias is Bias.CB:
        fire = _cb_fire_flags(seq, spec.stubbornness, spec.count_mode)

        def step(ps: PlausibilitySpace, i: int, o: ObsIndex) -> tuple[PlausibilitySpace, bool]:
            if fire[i]:
                return base(ps, extensions[o]), True
            return ps, False

    elif spec.bias is Bias.FR:
        if spec.framing is not FramingMode.IDENTITY and rng is None:
            raise ValueError("framed revision needs an rng")
        framed = frame_sequence(space, seq, spec.framing, rng, spec.fair_prefix)
        frames = [f for _, f in framed]

        def step(ps: PlausibilitySpace, i: int, o: ObsIndex) -> tuple[PlausibilitySpace, bool]:
            return base(ps, frames[i]), True

    elif spec.bias is Bias.AB:
        if rng is None:
            raise ValueError("anchored revision needs an rng")
        plus = one_step_plus(spec.base)

        def step(ps: PlausibilitySpace, i: int, o: ObsIndex) -> tuple[PlausibilitySpace, bool]:
            anchor = min_worlds(ps.order, extensions[o])
            return plus(ps, anchor, rng), True

    else:  # pragma: no cover
        raise ValueError(f"unknown bias {spec.bias!r}")

    return step


class BudgetedStep:
    """Wraps a step function with halving resource accounting.

    Observations arriving once ``remaining`` is below the floor are ignored
    (state carried, not revised).  Steps the inner function skips on its own,
    e.g. below a stubbornness threshold, consume nothing.
    """

    def __init__(self, inner: StepFn, budget: ResourceBudget) -> None:
        self.inner = inner
        self.remaining = budget.initial
        self.floor = budget.floor

    def __call__(self, ps: PlausibilitySpace, i: int, o: ObsIndex) -> tuple[PlausibilitySpace, bool]:
        if self.remaining < self.floor:
            return ps, False
        ps, revised = self.inner(ps, i, o)
        if revised:
            self.remaining /= 2
        return ps, revised

    @property
    def exhausted(self) -> bool:
        return self.remaining < self.floor


def with_budget(step_fn: StepFn, budget: ResourceBudget) -> BudgetedStep:
    """Wrap any per-observation step with a halving resource budget."""
    return BudgetedStep(step_fn, budget)


def _fold(spec: BiasedMethodSpec, ps: PlausibilitySpace, seq: DataSequence,
          rng: np.random.Generator | None) -> PlausibilitySpace:
    step = make_step(spec, ps.space, seq, rng)
    for i, o in enumerate(seq):
        ps, _ = step(ps, i, o)
    return ps


def revise_cb(
    base: Method,
    ps: PlausibilitySpace,
    seq: DataSequence,
    stubbornness: StubbornnessMap,
    mode: CountMode = CountMode.INCLUSIVE,
) -> PlausibilitySpace:
    """Confirmation-biased fold: each observation revises only once its
    occurrence count reaches the observable's stubbornness threshold."""
    spec = BiasedMethodSpec(base=base, bias=Bias.CB, stubbornness=stubbornness, count_mode=mode)
    return _fold(spec, ps, seq, None)


def revise_fr(base: Method, ps: PlausibilitySpace, fseq: FramedSequence) -> PlausibilitySpace:
    """Framing-biased fold: revise by the perceived frames, not the origins."""
    step = one_step(base)
    for _, frame in fseq:
        ps = step(ps, frame)
    return ps


def revise_ab(
    base: Method,
    ps: PlausibilitySpace,
    seq: DataSequence,
    rng: np.random.Generator,
) -> PlausibilitySpace:
    """Anchoring-biased fold: each step revises by the most plausible worlds
    of the observation and then enforces a unique minimum."""
    spec = BiasedMethodSpec(base=base, bias=Bias.AB)
    return _fold(spec, ps, seq, rng)
