"""Seeded random generation of complete trial inputs.

Every trial is a pure function of ``(config, trial_index)``: per-trial rngs
are derived by seed-sequence mixing rather than sequential consumption, so
trials reproduce bit-for-bit regardless of execution order and can be
generated in parallel.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .core import EpistemicSpace, PlausibilityOrder, Proposition, WorldId
from .streams import DataSequence, generate_sound_complete


class GenerationError(RuntimeError):
    """Raised when random generation cannot satisfy its constraints."""


@dataclass(frozen=True)
class GenConfig:
    """Parameters of one experiment series."""

    n_states: int = 5
    n_observables: int = 12
    extra_len: tuple[int, int] = (2, 4)
    stubbornness_range: tuple[int, int] = (1, 5)
    trials: int = 200
    master_seed: int = 0

    def __post_init__(self) -> None:
        if self.n_states < 1 or self.n_observables < 1:
            raise ValueError("n_states and n_observables must be >= 1")
        if self.extra_len[0] > self.extra_len[1] or self.extra_len[0] < 0:
            raise ValueError("extra_len range is empty or negative")
        if self.stubbornness_range[0] > self.stubbornness_range[1] or self.stubbornness_range[0] < 1:
            raise ValueError("stubbornness_range must be a non-empty range of ints >= 1")
        if self.trials < 0:
            raise ValueError("trials must be >= 0")


@dataclass(frozen=True)
class TrialInputs:
    """Everything one trial needs, shared by all methods under comparison."""

    space: EpistemicSpace
    prior: PlausibilityOrder
    actual: WorldId
    seq: DataSequence
    stubbornness: Mapping[int, int]
    trial_seed: int


def derived_rng(*keys: int) -> np.random.Generator:
    """Independent generator for a tuple of integer keys (order-insensitive mixing is
    deliberately avoided: distinct key tuples give unrelated streams)."""
    return np.random.default_rng(list(keys))


def derived_seed(*keys: int) -> int:
    """64-bit value identifying the stream for ``keys``; recorded with each trial."""
    return int(np.random.SeedSequence(list(keys)).generate_state(1, np.uint64)[0])


def random_space(
    n_states: int,
    n_observables: int,
    rng: np.random.Generator,
    max_retries: int = 1000,
) -> EpistemicSpace:
    """Uniformly random space: distinct non-empty observables covering every world.

    Duplicate or empty draws are redrawn; if after a full draw some world
    belongs to no observable, the whole draw is retried (a world without a
    signature has no sound and complete stream, so it could never serve as
    an actual world).
    """
    if (1 << n_states) - 1 < n_observables:
        raise GenerationError(
            f"{n_observables} distinct non-empty observables do not exist over {n_states} worlds"
        )
    full = (1 << n_states) - 1
    for _ in range(max_retries):
        chosen: list[Proposition] = []
        seen: set[int] = set()
        while len(chosen) < n_observables:
            bits = rng.integers(0, 2, size=n_states)
            m = 0
            for w in range(n_states):
                if bits[w]:
                    m |= 1 << w
            if m == 0 or m in seen:
                continue
            seen.add(m)
            chosen.append(m)
        union = 0
        for m in chosen:
            union |= m
        if union == full:
            return EpistemicSpace(n_states, tuple(chosen))
    raise GenerationError(f"could not cover all {n_states} worlds in {max_retries} draws")


def random_prior(space: EpistemicSpace, rng: np.random.Generator) -> PlausibilityOrder:
    """Independent uniform rank in ``[0, n_states)`` per world, then compacted."""
    ranks = rng.integers(0, space.n_states, size=space.n_states)
    return PlausibilityOrder.from_ranks({w: int(r) for w, r in enumerate(ranks)})


def random_stubbornness(
    space: EpistemicSpace, rng: np.random.Generator, lo: int, hi: int
) -> dict[int, int]:
    """Uniform threshold in ``[lo, hi]`` for every observable."""
    values = rng.integers(lo, hi + 1, size=space.n_observables)
    return {o: int(v) for o, v in enumerate(values)}


def make_trial(cfg: GenConfig, trial_index: int) -> TrialInputs:
    """Generate the shared inputs of one trial, reproducibly.

    Draw order within the trial rng is fixed: space, prior, actual world,
    extra length, sequence, stubbornness.
    """
    rng = derived_rng(cfg.master_seed, trial_index, 0)
    space = random_space(cfg.n_states, cfg.n_observables, rng)
    prior = random_prior(space, rng)
    actual = int(rng.integers(cfg.n_states))
    lo, hi = cfg.extra_len
    extra = int(rng.integers(lo, hi + 1))
    seq = generate_sound_complete(space, actual, extra, rng)
    slo, shi = cfg.stubbornness_range
    stubbornness = random_stubbornness(space, rng, slo, shi)
    return TrialInputs(
        space=space,
        prior=prior,
        actual=actual,
        seq=seq,
        stubbornness=stubbornness,
        trial_seed=derived_seed(cfg.master_seed, trial_index),
    )
