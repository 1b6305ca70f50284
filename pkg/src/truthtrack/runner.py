"""Config-driven series execution: paired trials, CSV records, summaries.

Within a series every method consumes identical trial inputs (space, prior,
actual world, sequence, stubbornness), so method comparisons are paired.
Each method also gets its own derived rng, keyed by (master seed, trial,
method slot), which keeps records independent of how many other methods run
alongside and of the parallelism degree.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .bias import Bias, BiasedMethodSpec, CountMode, ResourceBudget
from .core import PlausibilitySpace
from .expgen import GenConfig, TrialInputs, derived_rng, make_trial, random_stubbornness
from .learning import is_identifiable, run_learner, verdict
from .revision import Method
from .streams import FramingMode


class ConfigError(ValueError):
    """Malformed or inconsistent series configuration."""


@dataclass(frozen=True)
class MethodConfig:
    """One method column of a series, as read from the config file."""

    base: Method
    bias: Bias = Bias.NONE
    cb_mode: CountMode = CountMode.INCLUSIVE
    fr_mode: FramingMode = FramingMode.DYNAMIC
    fair_prefix: int = 0
    stubbornness: tuple[int, int] | None = None  # per-method override range

    @property
    def bias_label(self) -> str:
        if self.bias is Bias.CB:
            return "cb" if self.cb_mode is CountMode.INCLUSIVE else "cb_strict"
        if self.bias is Bias.FR:
            label = f"fr_{self.fr_mode.value}"
            if self.fr_mode is FramingMode.FAIR:
                label += str(self.fair_prefix)
            return label
        return self.bias.value

    def label(self, budgeted: bool = False) -> str:
        name = self.base.value
        if self.bias is not Bias.NONE:
            name += f"+{self.bias_label}"
        if budgeted:
            name += "-res"
        return name

    @classmethod
    def from_dict(cls, d: dict) -> "MethodConfig":
        try:
            base = Method(d["base"])
        except (KeyError, ValueError) as e:
            raise ConfigError(f"method needs a base of cond|lex|mini: {e}") from e
        try:
            bias = Bias(d.get("bias", "none"))
            cb_mode = CountMode(d.get("cb_mode", "inclusive"))
            fr_mode = FramingMode(d.get("fr_mode", "dynamic"))
        except ValueError as e:
            raise ConfigError(str(e)) from e
        fair_prefix = int(d.get("fair_prefix", 0))
        stub = d.get("stubbornness")
        if stub is not None:
            stub = (int(stub[0]), int(stub[1]))
            if stub[0] < 1 or stub[0] > stub[1]:
                raise ConfigError(f"stubbornness range {stub} invalid")
        return cls(base, bias, cb_mode, fr_mode, fair_prefix, stub)


@dataclass(frozen=True)
class SeriesConfig:
    gen: GenConfig
    methods: tuple[MethodConfig, ...]
    budget: ResourceBudget | None = None
    parallelism: int = 1

    def __post_init__(self) -> None:
        if not self.methods:
            raise ConfigError("at least one method is required")
        if self.parallelism < 1:
            raise ConfigError("parallelism must be >= 1")

    @classmethod
    def from_dict(cls, d: dict) -> "SeriesConfig":
        if not isinstance(d, dict):
            raise ConfigError("config root must be a JSON object")
        try:
            extra = d.get("extra_len", [2, 4])
            gen = GenConfig(
                n_states=int(d.get("n_states", 5)),
                n_observables=int(d.get("n_observables", 12)),
                extra_len=(int(extra[0]), int(extra[1])),
                stubbornness_range=tuple(d.get("stubbornness_range", (1, 5))),
                trials=int(d.get("trials", 200)),
                master_seed=int(d.get("master_seed", 0)),
            )
        except (TypeError, ValueError, IndexError) as e:
            raise ConfigError(f"bad generator parameters: {e}") from e
        methods = tuple(MethodConfig.from_dict(m) for m in d.get("methods", []))
        budget = None
        if d.get("budget") is not None:
            b = d["budget"]
            try:
                budget = ResourceBudget(float(b.get("initial", 100.0)), float(b.get("floor", 1.0)))
            except (AttributeError, TypeError, ValueError) as e:
                raise ConfigError(f"bad budget: {e}") from e
        return cls(gen, methods, budget, int(d.get("parallelism", 1)))

    @classmethod
    def from_file(cls, path: str | Path) -> "SeriesConfig":
        try:
            with open(path, encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read config {path}: {e}") from e
        return cls.from_dict(data)


CSV_COLUMNS = [
    "trial_id",
    "trial_seed",
    "method",
    "bias",
    "n_states",
    "n_observables",
    "actual_world",
    "seq_len",
    "identifiable",
    "success",
    "converge_step",
    "revisions_executed",
    "budget_exhausted",
]


@dataclass(frozen=True)
class TrialRecord:
    trial_id: int
    trial_seed: int
    method: str
    bias: str
    n_states: int
    n_observables: int
    actual_world: int
    seq_len: int
    identifiable: bool
    success: bool
    converge_step: int | None
    revisions_executed: int
    budget_exhausted: bool
    slot: int = 0  # method position within the series; not serialized

    def csv_row(self) -> list[str]:
        def fmt(v) -> str:
            if v is None:
                return ""
            if isinstance(v, bool):
                return "true" if v else "false"
            return str(v)

        return [fmt(getattr(self, c)) for c in CSV_COLUMNS]


def _method_stubbornness(inputs: TrialInputs, method: MethodConfig, cfg: SeriesConfig):
    """Trial map by default; a per-method range override is derived from the
    trial seed keyed by the range itself, so equal ranges stay paired."""
    if method.stubbornness is None or method.stubbornness == cfg.gen.stubbornness_range:
        return inputs.stubbornness
    lo, hi = method.stubbornness
    rng = derived_rng(cfg.gen.master_seed, inputs.trial_seed, 7, lo, hi)
    return random_stubbornness(inputs.space, rng, lo, hi)


def run_trial(cfg: SeriesConfig, trial_index: int) -> list[TrialRecord]:
    """Run every configured method on the shared inputs of one trial."""
    inputs = make_trial(cfg.gen, trial_index)
    ps0 = PlausibilitySpace(inputs.space, inputs.prior)
    identifiable = is_identifiable(inputs.space)
    records = []
    for slot, method in enumerate(cfg.methods):
        spec = BiasedMethodSpec(
            base=method.base,
            bias=method.bias,
            stubbornness=_method_stubbornness(inputs, method, cfg),
            count_mode=method.cb_mode,
            framing=method.fr_mode,
            fair_prefix=method.fair_prefix,
            budget=cfg.budget,
        )
        rng = derived_rng(cfg.gen.master_seed, trial_index, 1 + slot)
        traj = run_learner(spec, ps0, inputs.seq, rng)
        v = verdict(traj, inputs.actual)
        remaining = traj.steps[-1].budget_remaining
        exhausted = cfg.budget is not None and remaining < cfg.budget.floor
        records.append(
            TrialRecord(
                trial_id=trial_index,
                trial_seed=inputs.trial_seed,
                method=method.base.value,
                bias=method.bias_label,
                n_states=inputs.space.n_states,
                n_observables=inputs.space.n_observables,
                actual_world=inputs.actual,
                seq_len=len(inputs.seq),
                identifiable=identifiable,
                success=v.success,
                converge_step=v.converge_step,
                revisions_executed=v.revisions_executed,
                budget_exhausted=exhausted,
                slot=slot,
            )
        )
    return records


def _run_chunk(cfg: SeriesConfig, indices: list[int]) -> list[TrialRecord]:
    out: list[TrialRecord] = []
    for i in indices:
        out.extend(run_trial(cfg, i))
    return out


def run_series(cfg: SeriesConfig) -> list[TrialRecord]:
    """All trials of a series; output order is (trial, method slot) regardless
    of the parallelism degree."""
    indices = list(range(cfg.gen.trials))
    if cfg.parallelism <= 1 or len(indices) < 2:
        records = _run_chunk(cfg, indices)
    else:
        workers = min(cfg.parallelism, len(indices))
        chunks = [indices[k::workers] for k in range(workers)]
        records = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_run_chunk, [cfg] * len(chunks), chunks):
                records.extend(part)
    records.sort(key=lambda r: (r.trial_id, r.slot))
    return records


def write_csv(records: list[TrialRecord], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in records:
            writer.writerow(r.csv_row())


def csv_bytes(records: list[TrialRecord]) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow(r.csv_row())
    return buf.getvalue().encode("utf-8")


@dataclass(frozen=True)
class SeriesSummary:
    label: str
    trials: int
    successes: int
    success_rate: float
    success_rate_on_identifiable: float
    mean_converge_step: float
    mean_revisions: float


def summarize(cfg: SeriesConfig, records: list[TrialRecord]) -> list[SeriesSummary]:
    """Aggregate per method slot, in config order."""
    out = []
    budgeted = cfg.budget is not None
    for slot, method in enumerate(cfg.methods):
        rows = [r for r in records if r.slot == slot]
        n = len(rows)
        successes = sum(r.success for r in rows)
        ident = [r for r in rows if r.identifiable]
        ident_succ = sum(r.success for r in ident)
        steps = [r.converge_step for r in rows if r.converge_step is not None]
        out.append(
            SeriesSummary(
                label=method.label(budgeted),
                trials=n,
                successes=successes,
                success_rate=successes / n if n else math.nan,
                success_rate_on_identifiable=ident_succ / len(ident) if ident else math.nan,
                mean_converge_step=sum(steps) / len(steps) if steps else math.nan,
                mean_revisions=sum(r.revisions_executed for r in rows) / n if n else math.nan,
            )
        )
    return out


def format_summary(summaries: list[SeriesSummary]) -> str:
    header = f"{'method':<18}{'trials':>7}{'succ':>6}{'rate':>8}{'rate(id)':>10}{'conv':>7}{'revs':>7}"
    lines = [header]
    for s in summaries:
        lines.append(
            f"{s.label:<18}{s.trials:>7}{s.successes:>6}"
            f"{s.success_rate:>8.1%}{s.success_rate_on_identifiable:>10.1%}"
            f"{s.mean_converge_step:>7.1f}{s.mean_revisions:>7.1f}"
        )
    return "\n".join(lines)
