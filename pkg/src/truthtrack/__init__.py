"""Truth-tracking by iterated belief revision, with bias transformations.

The package models finite epistemic spaces whose agents try to identify an
unknown actual world from a stream of observations, revising a plausibility
order by conditioning, lexicographic, or minimal revision.  Three bias
transformations (confirmation, framing, anchoring) and a resource budget
can be layered on top, and a seeded Monte-Carlo harness compares the
success frequencies of biased and unbiased learners.
"""

from .bias import (
    Bias,
    BiasedMethodSpec,
    CountMode,
    ResourceBudget,
    StubbornnessMap,
    make_step,
    revise_ab,
    revise_cb,
    revise_fr,
    with_budget,
)
from .core import (
    EpistemicSpace,
    ObsIndex,
    PlausibilityOrder,
    PlausibilitySpace,
    Proposition,
    WorldId,
    believes,
    full_mask,
    mask_of,
    min_worlds,
    normalize_ranks,
    upgrade,
    worlds_in,
)
from .expgen import (
    GenConfig,
    GenerationError,
    TrialInputs,
    derived_rng,
    derived_seed,
    make_trial,
    random_prior,
    random_space,
    random_stubbornness,
)
from .learning import (
    Trajectory,
    TrajectoryStep,
    Verdict,
    canonical_prior,
    is_identifiable,
    run_learner,
    verdict,
)
from .revision import (
    Method,
    cond1,
    cond1_plus,
    iterate,
    lex1,
    lex1_plus,
    mini1,
    mini1_plus,
    one_step,
    one_step_plus,
)
from .runner import (
    ConfigError,
    MethodConfig,
    SeriesConfig,
    SeriesSummary,
    TrialRecord,
    format_summary,
    run_series,
    run_trial,
    summarize,
    write_csv,
)
from .streams import (
    DataSequence,
    FramedSequence,
    FramingMode,
    count_occurrences,
    frame_sequence,
    generate_fat,
    generate_sound_complete,
    is_complete,
    is_sound,
)

__version__ = "0.1.0"
