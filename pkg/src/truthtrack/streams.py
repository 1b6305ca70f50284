"""Finite observation sequences: soundness, completeness, generation, framing.

A data sequence is a tuple of observable indices into its space.  A framed
sequence replaces each observation with a perceived proposition that is a
subset of the original extension (the overconfidence constraint); the frame
may be empty.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .core import (
    EpistemicSpace,
    ObsIndex,
    Proposition,
    WorldId,
    worlds_in,
)

DataSequence = tuple[ObsIndex, ...]
#: (origin observable index, perceived proposition) per position
FramedSequence = tuple[tuple[ObsIndex, Proposition], ...]


class FramingMode(str, Enum):
    #: frame equals the observable's extension
    IDENTITY = "identity"
    #: one random subset per distinct observable, reused at every occurrence
    STATIC = "static"
    #: fresh random subset at every position
    DYNAMIC = "dynamic"
    #: dynamic noise on a finite prefix, identity afterwards
    FAIR = "fair"


def is_sound(space: EpistemicSpace, seq: DataSequence, s: WorldId) -> bool:
    """True iff every observation in ``seq`` is true at ``s``."""
    bit = 1 << s
    return all(space.observables[o] & bit for o in seq)


def is_complete(space: EpistemicSpace, seq: DataSequence, s: WorldId) -> bool:
    """True iff every observable true at ``s`` occurs somewhere in ``seq``."""
    return space.signature(s) <= set(seq)


def count_occurrences(seq: DataSequence, upto: int, o: ObsIndex) -> int:
    """Number of positions strictly before ``upto`` that hold ``o``."""
    if upto > len(seq):
        raise ValueError(f"upto={upto} exceeds sequence length {len(seq)}")
    return sum(1 for x in seq[:upto] if x == o)


def generate_sound_complete(
    space: EpistemicSpace,
    s: WorldId,
    extra: int,
    rng: np.random.Generator,
) -> DataSequence:
    """Random sequence of length ``n_observables + extra``, sound and complete for ``s``.

    Every observable true at ``s`` occurs at least once; the remaining slots
    are filled uniformly from that same set, and the whole sequence is
    uniformly shuffled.
    """
    sig = sorted(space.signature(s))
    if not sig:
        raise ValueError(f"world {s} satisfies no observable; no sound stream exists")
    length = space.n_observables + extra
    if length < len(sig):
        raise ValueError("requested length cannot fit a complete sequence")
    items = list(sig)
    fill = rng.integers(0, len(sig), size=length - len(sig))
    items.extend(sig[int(i)] for i in fill)
    rng.shuffle(items)
    return tuple(items)


def generate_fat(
    space: EpistemicSpace,
    s: WorldId,
    min_repeats: int,
    rng: np.random.Generator,
) -> DataSequence:
    """Sound sequence for ``s`` repeating every true observable ``min_repeats`` times, shuffled."""
    if min_repeats < 1:
        raise ValueError("min_repeats must be >= 1")
    sig = sorted(space.signature(s))
    if not sig:
        raise ValueError(f"world {s} satisfies no observable; no sound stream exists")
    items = list(sig) * min_repeats
    rng.shuffle(items)
    return tuple(items)


def _random_subset(extension: Proposition, rng: np.random.Generator) -> Proposition:
    """Uniformly random subset of the worlds in ``extension`` (may be empty)."""
    members = list(worlds_in(extension))
    keep = rng.integers(0, 2, size=len(members))
    m = 0
    for w, k in zip(members, keep):
        if k:
            m |= 1 << w
    return m


def frame_sequence(
    space: EpistemicSpace,
    seq: DataSequence,
    mode: FramingMode,
    rng: np.random.Generator | None = None,
    fair_prefix: int = 0,
) -> FramedSequence:
    """Apply a framing policy to a data sequence.

    Every frame is a subset of its origin's extension.  STATIC draws one
    subset per distinct observable (at its first occurrence) and reuses it;
    DYNAMIC draws fresh at each position; FAIR is dynamic on positions
    ``< fair_prefix`` and identity afterwards.
    """
    if mode is not FramingMode.IDENTITY and rng is None:
        raise ValueError(f"{mode.value} framing needs an rng")
    if fair_prefix < 0:
        raise ValueError("fair_prefix must be >= 0")

    out: list[tuple[ObsIndex, Proposition]] = []
    static_frames: dict[ObsIndex, Proposition] = {}
    for i, o in enumerate(seq):
        ext = space.observables[o]
        if mode is FramingMode.IDENTITY:
            frame = ext
        elif mode is FramingMode.STATIC:
            if o not in static_frames:
                static_frames[o] = _random_subset(ext, rng)
            frame = static_frames[o]
        elif mode is FramingMode.DYNAMIC:
            frame = _random_subset(ext, rng)
        else:  # FAIR
            frame = _random_subset(ext, rng) if i < fair_prefix else ext
        out.append((o, frame))
    return tuple(out)
