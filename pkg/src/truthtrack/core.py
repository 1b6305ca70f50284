"""Finite epistemic spaces, propositions as bitmasks, and plausibility orders.

Worlds are plain integers ``0 .. n_states - 1``.  A proposition is an int
bitmask over worlds (bit ``w`` set means world ``w`` belongs to it).  A
plausibility order is stored as a tuple of disjoint non-empty bitmask
*levels*: ``levels[0]`` holds the most plausible worlds and the level index
is the rank.  Ranks are therefore contiguous by construction, and two
orders describe the same total preorder iff their level tuples are equal.

Everything here is immutable and purely functional, so values can be shared
freely across threads and processes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

WorldId = int
ObsIndex = int
Proposition = int  # bitmask over worlds

EMPTY: Proposition = 0


def mask_of(worlds: Iterable[WorldId]) -> Proposition:
    """Build a proposition bitmask from an iterable of world ids."""
    m = 0
    for w in worlds:
        if w < 0:
            raise ValueError(f"world id must be non-negative, got {w}")
        m |= 1 << w
    return m


def worlds_in(mask: Proposition) -> Iterator[WorldId]:
    """Iterate over the world ids contained in a proposition, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def full_mask(n_states: int) -> Proposition:
    return (1 << n_states) - 1


def _fmt_mask(mask: Proposition) -> str:
    return "{" + ",".join(str(w) for w in worlds_in(mask)) + "}"


@dataclass(frozen=True)
class EpistemicSpace:
    """A finite set of worlds together with the observable propositions.

    Observables must be non-empty and pairwise distinct as extensions;
    duplicates are rejected so that counting occurrences by index and by
    proposition coincide.
    """

    n_states: int
    observables: tuple[Proposition, ...]

    def __post_init__(self) -> None:
        if self.n_states < 1:
            raise ValueError("n_states must be >= 1")
        full = full_mask(self.n_states)
        seen: set[int] = set()
        for i, obs in enumerate(self.observables):
            if obs == EMPTY:
                raise ValueError(f"observable {i} is empty")
            if obs & ~full:
                raise ValueError(f"observable {i} mentions worlds >= {self.n_states}")
            if obs in seen:
                raise ValueError(f"observable {i} duplicates an earlier extension")
            seen.add(obs)

    @classmethod
    def from_sets(cls, n_states: int, observables: Iterable[Iterable[WorldId]]) -> "EpistemicSpace":
        return cls(n_states, tuple(mask_of(o) for o in observables))

    @property
    def all_worlds(self) -> Proposition:
        return full_mask(self.n_states)

    @property
    def n_observables(self) -> int:
        return len(self.observables)

    def signature(self, s: WorldId) -> frozenset[ObsIndex]:
        """The set of observable indices whose extension contains ``s``."""
        if not 0 <= s < self.n_states:
            raise ValueError(f"world {s} outside [0, {self.n_states})")
        bit = 1 << s
        return frozenset(i for i, obs in enumerate(self.observables) if obs & bit)


@dataclass(frozen=True)
class PlausibilityOrder:
    """Total preorder over a (possibly empty) domain of worlds.

    ``levels`` are pairwise disjoint non-empty masks; a world's rank is the
    index of its level, lower rank meaning more plausible.  The empty order
    (no levels) is legal: it is the failed state reached by conditioning on
    a proposition disjoint from the domain.
    """

    levels: tuple[Proposition, ...] = ()

    def __post_init__(self) -> None:
        seen = 0
        for i, level in enumerate(self.levels):
            if level == EMPTY:
                raise ValueError(f"level {i} is empty (ranks must be contiguous)")
            if level & seen:
                raise ValueError(f"level {i} overlaps a lower level")
            seen |= level

    @classmethod
    def flat(cls, domain: Proposition) -> "PlausibilityOrder":
        """All worlds in ``domain`` equally plausible."""
        return cls((domain,)) if domain else cls(())

    @classmethod
    def from_ranks(cls, ranks: Mapping[WorldId, int]) -> "PlausibilityOrder":
        """Build an order from an arbitrary world -> rank map.

        Rank values only matter up to relative comparison; they are
        compacted to contiguous levels starting at 0.
        """
        by_rank: dict[int, int] = {}
        for w, r in ranks.items():
            if r < 0:
                raise ValueError(f"rank of world {w} is negative")
            by_rank[r] = by_rank.get(r, 0) | (1 << w)
        return cls(tuple(by_rank[r] for r in sorted(by_rank)))

    @property
    def domain(self) -> Proposition:
        d = 0
        for level in self.levels:
            d |= level
        return d

    @property
    def is_empty(self) -> bool:
        return not self.levels

    @property
    def minimum(self) -> Proposition:
        """Mask of the most plausible worlds (empty mask on the empty order)."""
        return self.levels[0] if self.levels else EMPTY

    @property
    def max_rank(self) -> int:
        if not self.levels:
            raise ValueError("empty order has no ranks")
        return len(self.levels) - 1

    def rank_of(self, w: WorldId) -> int:
        bit = 1 << w
        for r, level in enumerate(self.levels):
            if level & bit:
                return r
        raise KeyError(f"world {w} not in domain")

    def ranks(self) -> dict[WorldId, int]:
        return {w: r for r, level in enumerate(self.levels) for w in worlds_in(level)}

    def __repr__(self) -> str:
        if not self.levels:
            return "PlausibilityOrder[empty]"
        return "PlausibilityOrder[" + " < ".join(_fmt_mask(lv) for lv in self.levels) + "]"


def normalize_ranks(ranks: Mapping[WorldId, int]) -> PlausibilityOrder:
    """Compact a world -> rank map into a canonical order (ranks from 0, contiguous)."""
    return PlausibilityOrder.from_ranks(ranks)


def min_worlds(order: PlausibilityOrder, restrict: Proposition) -> Proposition:
    """Most plausible worlds of ``domain & restrict``; empty mask if disjoint."""
    for level in order.levels:
        hit = level & restrict
        if hit:
            return hit
    return EMPTY


def upgrade(order: PlausibilityOrder, x: WorldId) -> PlausibilityOrder:
    """Make ``x`` the unique most plausible world, preserving the rest.

    Raises ValueError if ``x`` is not in the domain.
    """
    bit = 1 << x
    if not order.domain & bit:
        raise ValueError(f"world {x} not in the order's domain")
    rest = tuple(lv & ~bit for lv in order.levels if lv & ~bit)
    return PlausibilityOrder((bit,) + rest)


@dataclass(frozen=True)
class PlausibilitySpace:
    """An epistemic space paired with a plausibility order over (a subset of) its worlds."""

    space: EpistemicSpace
    order: PlausibilityOrder

    def __post_init__(self) -> None:
        if self.order.domain & ~self.space.all_worlds:
            raise ValueError("order domain mentions worlds outside the space")

    @classmethod
    def flat(cls, space: EpistemicSpace) -> "PlausibilitySpace":
        return cls(space, PlausibilityOrder.flat(space.all_worlds))

    @property
    def conjecture(self) -> Proposition:
        """Mask of the currently most plausible worlds (the belief set)."""
        return self.order.minimum

    def with_order(self, order: PlausibilityOrder) -> "PlausibilitySpace":
        return PlausibilitySpace(self.space, order)


def believes(ps: PlausibilitySpace, p: Proposition) -> bool:
    """True iff every most plausible world satisfies ``p`` (vacuously true when empty)."""
    return not ps.order.minimum & ~p
