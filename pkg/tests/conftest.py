import pytest

from truthtrack.core import (
    EpistemicSpace,
    PlausibilityOrder,
    PlausibilitySpace,
    mask_of,
)

# Four worlds w=0, t=1, s=2, r=3 split by two binary features:
# p={w,t}, pbar={s,r}, q={w,s}, qbar={t,r}.  Every world is pinned down by
# exactly two observations, so plain conditioning from a flat prior always
# identifies it, while any stubbornness threshold above 1 blocks every
# update on streams that mention each observable only once.
GRID_OBS = dict(p=0, pbar=1, q=2, qbar=3)


@pytest.fixture
def grid_space() -> EpistemicSpace:
    return EpistemicSpace.from_sets(4, [[0, 1], [2, 3], [0, 2], [1, 3]])


@pytest.fixture
def grid_flat(grid_space) -> PlausibilitySpace:
    return PlausibilitySpace.flat(grid_space)


# Four worlds w=0, t=1, s=2, r=3 with prior w < t ~ s < r and observables
# p={w}, q={r,t,w}, pbar={r,s,t}, qbar={s}; the actual world of interest is
# s, whose signature is {pbar, qbar}.
ANCHOR_OBS = dict(p=0, q=1, pbar=2, qbar=3)


@pytest.fixture
def anchor_space() -> EpistemicSpace:
    return EpistemicSpace.from_sets(4, [[0], [0, 1, 3], [1, 2, 3], [2]])


@pytest.fixture
def anchor_order() -> PlausibilityOrder:
    return PlausibilityOrder((mask_of([0]), mask_of([1, 2]), mask_of([3])))


@pytest.fixture
def anchor_ps(anchor_space, anchor_order) -> PlausibilitySpace:
    return PlausibilitySpace(anchor_space, anchor_order)
