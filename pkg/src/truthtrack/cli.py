"""Command-line experiment runner.

Subcommands:

* ``run``    — execute a series from a JSON config, write CSV, print a summary
* ``repro``  — canned paired comparisons (fig2..fig5) with CSV + SVG output
* ``sweep``  — success-rate grid over (n_states, n_observables) cells
* ``space``  — generate / inspect / test single spaces stored as JSON

Exit codes: 0 success, 2 usage or config error, 3 generation failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .bias import Bias, ResourceBudget
from .core import EpistemicSpace, PlausibilityOrder, mask_of, worlds_in
from .expgen import GenConfig, GenerationError, derived_rng, derived_seed, random_prior, random_space
from .learning import is_identifiable
from .revision import Method
from .runner import (
    ConfigError,
    MethodConfig,
    SeriesConfig,
    format_summary,
    run_series,
    summarize,
    write_csv,
)

SECTION_DEFAULTS = dict(n_states=5, n_observables=12, extra_len=(2, 4), trials=200)

FIGURE_BIASES = {
    "fig2": Bias.CB,
    "fig3": Bias.FR,
    "fig4": Bias.AB,
    "fig5": Bias.AB,
}


def _figure_config(figure: str, seed: int, trials: int, parallelism: int) -> SeriesConfig:
    bias = FIGURE_BIASES[figure]
    methods = []
    for base in (Method.COND, Method.LEX, Method.MINI):
        methods.append(MethodConfig(base=base))
        methods.append(MethodConfig(base=base, bias=bias))
    budget = ResourceBudget(100.0, 1.0) if figure == "fig5" else None
    gen = GenConfig(master_seed=seed, trials=trials, **{k: v for k, v in SECTION_DEFAULTS.items() if k != "trials"})
    return SeriesConfig(gen=gen, methods=tuple(methods), budget=budget, parallelism=parallelism)


def parse_method(text: str) -> MethodConfig:
    """Parse 'base' or 'base+bias' strings such as ``lex+ab`` or ``cond``."""
    base, _, bias = text.partition("+")
    try:
        return MethodConfig(base=Method(base), bias=Bias(bias) if bias else Bias.NONE)
    except ValueError as e:
        raise ConfigError(f"bad method {text!r}: {e}") from e


def cmd_run(args: argparse.Namespace) -> int:
    cfg = SeriesConfig.from_file(args.config)
    if args.seed is not None:
        cfg = dataclasses.replace(cfg, gen=dataclasses.replace(cfg.gen, master_seed=args.seed))
    if args.parallelism is not None:
        cfg = dataclasses.replace(cfg, parallelism=args.parallelism)
    records = run_series(cfg)
    write_csv(records, args.out)
    summaries = summarize(cfg, records)
    print(format_summary(summaries))
    print(f"wrote {args.out}")
    if args.svg:
        from .charts import grouped_bars

        grouped_bars(
            args.svg,
            f"success frequency ({cfg.gen.trials} trials)",
            [s.label for s in summaries],
            [("series", [s.success_rate for s in summaries])],
        )
        print(f"wrote {args.svg}")
    return 0


def cmd_repro(args: argparse.Namespace) -> int:
    from .charts import grouped_bars

    cfg = _figure_config(args.figure, args.seed, args.trials, args.parallelism)
    records = run_series(cfg)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{args.figure}.csv"
    write_csv(records, csv_path)
    summaries = summarize(cfg, records)
    print(format_summary(summaries))

    unbiased = [s.success_rate for s in summaries[0::2]]
    biased = [s.success_rate for s in summaries[1::2]]
    res = "-res" if cfg.budget is not None else ""
    svg_path = out_dir / f"{args.figure}.svg"
    grouped_bars(
        svg_path,
        f"{args.figure}: biased vs unbiased ({cfg.gen.trials} trials)",
        ["cond", "lex", "mini"],
        [(f"unbiased{res}", unbiased), (f"{FIGURE_BIASES[args.figure].value}{res}", biased)],
    )
    print(f"wrote {csv_path} and {svg_path}")
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    from .charts import sweep_lines

    states = [int(s) for s in args.states.split(",") if s]
    lo, _, hi = args.observables.partition(":")
    obs_range = range(int(lo), int(hi) + 1)
    if not states or len(obs_range) == 0:
        raise ConfigError("states list and observables range must be non-empty")
    method = parse_method(args.method)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for n in states:
        for m in obs_range:
            if (1 << n) - 1 < m:
                print(f"skipping {n} states x {m} observables: not enough distinct propositions",
                      file=sys.stderr)
                continue
            gen = GenConfig(
                n_states=n,
                n_observables=m,
                trials=args.trials,
                master_seed=derived_seed(args.seed, n, m),
            )
            cfg = SeriesConfig(gen=gen, methods=(method,), parallelism=args.parallelism)
            records = run_series(cfg)
            successes = sum(r.success for r in records)
            rate = successes / len(records) if records else float("nan")
            rows.append((n, m, successes, rate))
            print(f"{n} states, {m:>3} observables: {rate:.1%}")

    csv_path = out_dir / "sweep.csv"
    with open(csv_path, "w", encoding="utf-8", newline="") as f:
        f.write("n_states,n_observables,method,trials,successes,success_rate\n")
        for n, m, successes, rate in rows:
            f.write(f"{n},{m},{method.label()},{args.trials},{successes},{rate:.6f}\n")
    for n in states:
        cells = [(m, rate) for nn, m, _, rate in rows if nn == n]
        if not cells:
            continue
        sweep_lines(
            out_dir / f"sweep_{n}states.svg",
            f"{method.label()}: {n} states, {args.trials} trials per cell",
            [m for m, _ in cells],
            [r for _, r in cells],
        )
    print(f"wrote {csv_path}")
    return 0


def _load_space_file(path: str) -> tuple[EpistemicSpace, PlausibilityOrder]:
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
        space = EpistemicSpace(
            int(data["n_states"]),
            tuple(mask_of(int(w) for w in obs) for obs in data["observables"]),
        )
        ranks = [int(r) for r in data["prior_ranks"]]
        if len(ranks) != space.n_states:
            raise ValueError("prior_ranks must list one rank per world")
        prior = PlausibilityOrder.from_ranks(dict(enumerate(ranks)))
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise ConfigError(f"malformed space file {path}: {e}") from e
    return space, prior


def cmd_space(args: argparse.Namespace) -> int:
    if args.space_cmd == "gen":
        rng = derived_rng(args.seed, 0)
        space = random_space(args.states, args.observables, rng)
        prior = random_prior(space, rng)
        payload = {
            "n_states": space.n_states,
            "observables": [list(worlds_in(o)) for o in space.observables],
            "prior_ranks": [prior.rank_of(w) for w in range(space.n_states)],
        }
        with open(args.out, "w", encoding="utf-8") as f:
            json.dump(payload, f, indent=2)
            f.write("\n")
        print(f"wrote {args.out}")
        return 0

    space, prior = _load_space_file(args.file)
    if args.space_cmd == "identifiable":
        print("true" if is_identifiable(space) else "false")
        return 0

    # inspect
    print(f"{space.n_states} worlds, {space.n_observables} observables")
    for i, obs in enumerate(space.observables):
        print(f"  O{i} = {sorted(worlds_in(obs))}")
    for s in range(space.n_states):
        sig = sorted(space.signature(s))
        print(f"  world {s}: rank {prior.rank_of(s)}, signature {{{', '.join(f'O{i}' for i in sig)}}}")
    print(f"identifiable: {'true' if is_identifiable(space) else 'false'}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="truthtrack", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a series from a JSON config")
    p_run.add_argument("--config", required=True)
    p_run.add_argument("--out", default="results.csv")
    p_run.add_argument("--seed", type=int, default=None, help="override master_seed")
    p_run.add_argument("--parallelism", type=int, default=None)
    p_run.add_argument("--svg", default=None, help="also write a summary bar chart")
    p_run.set_defaults(fn=cmd_run)

    p_repro = sub.add_parser("repro", help="reproduce a canned biased-vs-unbiased comparison")
    p_repro.add_argument("figure", choices=sorted(FIGURE_BIASES))
    p_repro.add_argument("--out", default="repro")
    p_repro.add_argument("--seed", type=int, default=2024)
    p_repro.add_argument("--trials", type=int, default=200)
    p_repro.add_argument("--parallelism", type=int, default=1)
    p_repro.set_defaults(fn=cmd_repro)

    p_sweep = sub.add_parser("sweep", help="success-rate grid over states x observables")
    p_sweep.add_argument("--states", default="3,5,7,10", help="comma-separated state counts")
    p_sweep.add_argument("--observables", default="2:14", help="inclusive range lo:hi")
    p_sweep.add_argument("--method", default="lex+ab", help="base or base+bias, e.g. lex+ab")
    p_sweep.add_argument("--out", default="sweep")
    p_sweep.add_argument("--seed", type=int, default=2024)
    p_sweep.add_argument("--trials", type=int, default=200)
    p_sweep.add_argument("--parallelism", type=int, default=1)
    p_sweep.set_defaults(fn=cmd_sweep)

    p_space = sub.add_parser("space", help="single-space utilities")
    space_sub = p_space.add_subparsers(dest="space_cmd", required=True)
    p_gen = space_sub.add_parser("gen", help="generate a random space + prior as JSON")
    p_gen.add_argument("--states", type=int, default=5)
    p_gen.add_argument("--observables", type=int, default=12)
    p_gen.add_argument("--seed", type=int, default=2024)
    p_gen.add_argument("--out", default="space.json")
    p_gen.set_defaults(fn=cmd_space)
    p_inspect = space_sub.add_parser("inspect", help="pretty-print signatures and order")
    p_inspect.add_argument("file")
    p_inspect.set_defaults(fn=cmd_space)
    p_ident = space_sub.add_parser("identifiable", help="print the identifiability verdict")
    p_ident.add_argument("file")
    p_ident.set_defaults(fn=cmd_space)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except GenerationError as e:
        print(f"generation failed: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
