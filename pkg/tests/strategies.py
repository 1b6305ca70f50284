"""Hypothesis strategies for spaces, orders, and observation sequences."""

from hypothesis import strategies as st

from truthtrack.core import EpistemicSpace, PlausibilityOrder, PlausibilitySpace


@st.composite
def spaces(draw, max_states: int = 6, max_observables: int = 6) -> EpistemicSpace:
    n = draw(st.integers(1, max_states))
    k = draw(st.integers(1, min(max_observables, (1 << n) - 1)))
    obs = draw(
        st.lists(st.integers(1, (1 << n) - 1), min_size=k, max_size=k, unique=True)
    )
    return EpistemicSpace(n, tuple(obs))


@st.composite
def orders(draw, space: EpistemicSpace, allow_empty: bool = False) -> PlausibilityOrder:
    n = space.n_states
    members = draw(st.integers(0 if allow_empty else 1, (1 << n) - 1))
    ranks = {}
    for w in range(n):
        if members & (1 << w):
            ranks[w] = draw(st.integers(0, n - 1))
    return PlausibilityOrder.from_ranks(ranks)


@st.composite
def plausibility_spaces(draw, allow_empty: bool = False) -> PlausibilitySpace:
    space = draw(spaces())
    return PlausibilitySpace(space, draw(orders(space, allow_empty=allow_empty)))


@st.composite
def spaces_with_proposition(draw, allow_empty: bool = True):
    ps = draw(plausibility_spaces())
    p = draw(st.integers(0 if allow_empty else 1, (1 << ps.space.n_states) - 1))
    return ps, p


@st.composite
def spaces_with_sequence(draw):
    ps = draw(plausibility_spaces())
    k = ps.space.n_observables
    seq = draw(st.lists(st.integers(0, k - 1), max_size=12))
    return ps, tuple(seq)
