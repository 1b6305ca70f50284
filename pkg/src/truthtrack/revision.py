"""One-step belief revision operators and their iterated and anchored forms.

Three classic operators, written as rewrites of the canonical level
representation:

* conditioning restricts the domain to the observed proposition;
* lexicographic revision moves all satisfying worlds strictly above all
  others, preserving relative order inside each block;
* minimal (conservative) revision promotes only the most plausible
  satisfying worlds to the top, leaving everything else in place.

Each operator also has an anchored ``*_plus`` variant that guarantees a
unique most plausible world after the step: when several worlds tie for
minimal, conditioning keeps one at random and discards the rest of the
domain, while the other two upgrade one random minimal world.

Minimal revision follows the conservative reading (promoted block strictly
first, remainder order-preserved); a literal pairwise rewrite of the usual
relational definition is not transitive whenever some world outside the
observation sits strictly below the promoted block.
"""

from __future__ import annotations

from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .core import (
    EMPTY,
    PlausibilityOrder,
    PlausibilitySpace,
    Proposition,
    WorldId,
    min_worlds,
    upgrade,
    worlds_in,
)


class Method(str, Enum):
    COND = "cond"
    LEX = "lex"
    MINI = "mini"


def cond1(ps: PlausibilitySpace, p: Proposition) -> PlausibilitySpace:
    """Restrict the order to ``p``; disjoint ``p`` yields the empty order."""
    levels = tuple(hit for lv in ps.order.levels if (hit := lv & p))
    return ps.with_order(PlausibilityOrder(levels))


def lex1(ps: PlausibilitySpace, p: Proposition) -> PlausibilitySpace:
    """All ``p``-worlds strictly before the rest, relative order kept in each block."""
    front = tuple(hit for lv in ps.order.levels if (hit := lv & p))
    back = tuple(hit for lv in ps.order.levels if (hit := lv & ~p))
    return ps.with_order(PlausibilityOrder(front + back))


def mini1(ps: PlausibilitySpace, p: Proposition) -> PlausibilitySpace:
    """Promote the most plausible ``p``-worlds to the top; no-op if none exist."""
    m = min_worlds(ps.order, p)
    if m == EMPTY:
        return ps
    rest = tuple(hit for lv in ps.order.levels if (hit := lv & ~m))
    return ps.with_order(PlausibilityOrder((m,) + rest))


def _pick_world(mask: Proposition, rng: np.random.Generator) -> WorldId:
    members = list(worlds_in(mask))
    return members[int(rng.integers(len(members)))]


def cond1_plus(ps: PlausibilitySpace, p: Proposition, rng: np.random.Generator) -> PlausibilitySpace:
    """Conditioning that never leaves a tie: on several minima it keeps one
    uniformly chosen world and discards the rest of the domain."""
    out = cond1(ps, p)
    top = out.order.minimum
    if top == EMPTY or top.bit_count() == 1:
        return out
    x = _pick_world(top, rng)
    return out.with_order(PlausibilityOrder((1 << x,)))


def lex1_plus(ps: PlausibilitySpace, p: Proposition, rng: np.random.Generator) -> PlausibilitySpace:
    """Lexicographic step followed, on a tie, by upgrading one random minimal world."""
    return _plus(lex1(ps, p), rng)


def mini1_plus(ps: PlausibilitySpace, p: Proposition, rng: np.random.Generator) -> PlausibilitySpace:
    """Minimal step followed, on a tie, by upgrading one random minimal world."""
    return _plus(mini1(ps, p), rng)


def _plus(ps: PlausibilitySpace, rng: np.random.Generator) -> PlausibilitySpace:
    top = ps.order.minimum
    if top == EMPTY or top.bit_count() == 1:
        return ps
    return ps.with_order(upgrade(ps.order, _pick_world(top, rng)))


OneStep = Callable[[PlausibilitySpace, Proposition], PlausibilitySpace]
OneStepPlus = Callable[[PlausibilitySpace, Proposition, np.random.Generator], PlausibilitySpace]

_ONE_STEP: dict[Method, OneStep] = {
    Method.COND: cond1,
    Method.LEX: lex1,
    Method.MINI: mini1,
}
_ONE_STEP_PLUS: dict[Method, OneStepPlus] = {
    Method.COND: cond1_plus,
    Method.LEX: lex1_plus,
    Method.MINI: mini1_plus,
}


def one_step(method: Method) -> OneStep:
    return _ONE_STEP[method]


def one_step_plus(method: Method) -> OneStepPlus:
    return _ONE_STEP_PLUS[method]


def iterate(method: Method, ps: PlausibilitySpace, seq: Sequence[int]) -> PlausibilitySpace:
    """Left fold of the one-step operator over the extensions of ``seq``."""
    step = one_step(method)
    for o in seq:
        ps = step(ps, ps.space.observables[o])
    return ps
