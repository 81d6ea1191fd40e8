"""Command line front end: run, verify, sweep.

Deterministic by construction: identical arguments (including seeds)
produce byte-identical outputs, so there are no timestamps or timing
fields anywhere.

Metrics document fields, exactly: n, k, scheduler, seed,
total_interactions, ket_exchanges, out_updates, quiescence_step,
converged, tie, winner, final_outputs_histogram. Trace event fields,
exactly: step, pair, pre, post, exchanged, out_changed. Sweep row
fields, exactly: n, k, trials, seed, converged, mean_interactions,
max_interactions, mean_ket_exchanges, max_ket_exchanges.

Formats: "json-lines" writes one JSON object per line (the metrics
document is a single line); "csv" writes a header row plus data rows,
with list- or mapping-valued cells JSON-encoded.

Exit codes: 0 success; 2 usage error; 3 no quiescence within the cap;
4 runtime invariant violation or failed correctness check.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from .engine import (FixedSteps, InvariantViolation, RunTrace, UntilQuiescent,
                     init_configuration, run)
from .oracle import brute_majority
from .schedulers import make_scheduler
from .verify import enumerate_instances, random_instance, verify_battery

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NO_CONVERGENCE = 3
EXIT_VIOLATION = 4

METRICS_FIELDS = ("n", "k", "scheduler", "seed", "total_interactions",
                  "ket_exchanges", "out_updates", "quiescence_step",
                  "converged", "tie", "winner", "final_outputs_histogram")
TRACE_FIELDS = ("step", "pair", "pre", "post", "exchanged", "out_changed")
SWEEP_FIELDS = ("n", "k", "trials", "seed", "converged", "mean_interactions",
                "max_interactions", "mean_ket_exchanges", "max_ket_exchanges")


class UsageError(Exception):
    """Bad arguments detected after argparse; maps to exit code 2."""


@dataclass
class ExperimentSpec:
    """Everything one `run` invocation needs, argparse-independent."""

    colors: tuple[int, ...] | None = None   # explicit input colors
    random_colors: str | None = None        # uniform | weights=... | planted=<m>
    n: int | None = None
    k: int | None = None
    scheduler: str = "roundrobin"
    seed: int = 0
    cap: int | None = None                  # round-robin cycles
    fixed_steps: int | None = None          # overrides cap when set
    assertions: str = "safety"
    adversary_exclude: tuple[int, int] = (0, 1)
    adversary_release: int | None = None
    trace_path: str | None = None
    out_path: str | None = None
    fmt: str = "json-lines"


def parse_color_list(text: str) -> list[int]:
    """Colors from inline text: "0,1,1" or "0:3, 1:2" (color:count)."""
    colors: list[int] = []
    for token in text.replace(",", " ").split():
        color, _, count = token.partition(":")
        try:
            c = int(color)
            m = int(count) if count else 1
        except ValueError:
            raise UsageError(f"cannot parse color token {token!r}") from None
        if c < 0 or m < 0:
            raise UsageError(f"negative value in color token {token!r}")
        colors.extend([c] * m)
    if not colors:
        raise UsageError("empty color list")
    return colors


def load_colors(value: str) -> list[int]:
    """Colors from a file path if one exists, else inline text.

    Files hold the same tokens as inline lists, whitespace or newline
    separated; lines starting with # are comments.
    """
    if os.path.exists(value):
        with open(value, encoding="utf-8") as handle:
            lines = [line for line in handle
                     if line.strip() and not line.lstrip().startswith("#")]
        return parse_color_list(" ".join(lines))
    return parse_color_list(value)


def _planted_counts(n: int, k: int, margin: int,
                    rng: np.random.Generator) -> list[int]:
    # Uniform draw, then move agents onto a random winner until it leads
    # every other color by at least the margin.
    counts = [0] * k
    for c in rng.integers(0, k, size=n):
        counts[int(c)] += 1
    winner = int(rng.integers(k))
    while True:
        runner_up = max((m for c, m in enumerate(counts) if c != winner),
                        default=0)
        if counts[winner] >= runner_up + margin:
            return counts
        donor = max((c for c in range(k) if c != winner),
                    key=lambda c: counts[c])
        counts[donor] -= 1
        counts[winner] += 1


def make_random_colors(spec_text: str, n: int, k: int | None,
                       rng: np.random.Generator) -> tuple[list[int], int]:
    """Instantiate a --random-colors spec; returns (colors, k).

    Grammar: "uniform" draws i.i.d. colors; "weights=w0,w1,..." draws from
    the normalized weights (k defaults to their count); "planted=<margin>"
    draws uniformly and then forces a random color to lead every other by
    at least <margin> agents.
    """
    kind, _, arg = spec_text.partition("=")
    if kind == "uniform":
        if arg:
            raise UsageError("uniform takes no argument")
        if k is None:
            raise UsageError("--random-colors uniform needs --k")
        return [int(c) for c in rng.integers(0, k, size=n)], k
    if kind == "weights":
        try:
            weights = [float(w) for w in arg.split(",")]
        except ValueError:
            raise UsageError(f"cannot parse weights {arg!r}") from None
        if k is None:
            k = len(weights)
        elif k != len(weights):
            raise UsageError(f"{len(weights)} weights but --k {k}")
        if any(w < 0 for w in weights) or sum(weights) <= 0:
            raise UsageError("weights must be non-negative and not all zero")
        p = np.asarray(weights) / sum(weights)
        return [int(c) for c in rng.choice(k, size=n, p=p)], k
    if kind == "planted":
        try:
            margin = int(arg)
        except ValueError:
            raise UsageError(f"cannot parse planted margin {arg!r}") from None
        if k is None:
            raise UsageError("--random-colors planted needs --k")
        if not 1 <= margin <= n:
            raise UsageError(f"planted margin must be in [1, {n}], got {margin}")
        counts = _planted_counts(n, k, margin, rng)
        colors = [c for c, m in enumerate(counts) for _ in range(m)]
        return [colors[i] for i in rng.permutation(n)], k
    raise UsageError(f"unknown --random-colors spec {spec_text!r}")


def resolve_inputs(spec: ExperimentSpec) -> tuple[list[int], int]:
    """Produce the input color list and k from an ExperimentSpec."""
    if (spec.colors is None) == (spec.random_colors is None):
        raise UsageError("exactly one of --colors and --random-colors is needed")
    if spec.colors is not None:
        colors = list(spec.colors)
        if spec.n is not None and spec.n != len(colors):
            raise UsageError(f"--n {spec.n} but {len(colors)} colors given")
        k = spec.k if spec.k is not None else max(colors) + 1
        if any(not 0 <= c < k for c in colors):
            raise UsageError(f"colors outside [0, {k - 1}]")
        return colors, k
    if spec.n is None or spec.n < 1:
        raise UsageError("--random-colors needs --n >= 1")
    rng = np.random.default_rng([spec.seed, 0])
    return make_random_colors(spec.random_colors, spec.n, spec.k, rng)


def _json_line(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def _csv_cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (dict, list, tuple)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return value


def render_rows(rows, fields, fmt: str) -> str:
    """Serialize dict rows with a fixed field order to json-lines or csv."""
    if fmt == "json-lines":
        return "".join(_json_line(row) for row in rows)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow([_csv_cell(row[f]) for f in fields])
    return buffer.getvalue()


def write_text(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def trace_rows(trace: RunTrace):
    for e in trace.events:
        yield {"step": e.step, "pair": list(e.pair),
               "pre": [list(s) for s in e.pre],
               "post": [list(s) for s in e.post],
               "exchanged": e.exchanged, "out_changed": e.out_changed}


def run_experiment(spec: ExperimentSpec) -> int:
    """Execute one run and write its metrics (and trace); returns exit code."""
    colors, k = resolve_inputs(spec)
    n = len(colors)
    scheduler = make_scheduler(
        spec.scheduler, n,
        seed=[spec.seed, 1] if spec.scheduler == "random" else None,
        excluded=spec.adversary_exclude,
        release_step=spec.adversary_release)
    if spec.fixed_steps is not None:
        policy = FixedSteps(spec.fixed_steps)
    else:
        policy = UntilQuiescent(spec.cap)
    config = init_configuration(colors, k)
    trace_mode = "changes" if spec.trace_path else "off"
    try:
        final, trace, metrics = run(config, scheduler, policy,
                                    assertions=spec.assertions,
                                    trace=trace_mode)
    except InvariantViolation as violation:
        print(f"invariant violation: {violation}", file=sys.stderr)
        return EXIT_VIOLATION

    winner, unique = brute_majority(colors)
    doc = {
        "n": n,
        "k": k,
        "scheduler": scheduler.kind,
        "seed": spec.seed,
        "total_interactions": metrics.total_interactions,
        "ket_exchanges": metrics.ket_exchanges,
        "out_updates": metrics.out_updates,
        "quiescence_step": metrics.quiescence_step,
        "converged": metrics.converged,
        "tie": not unique,
        "winner": winner if unique else None,
        "final_outputs_histogram": {
            str(c): metrics.final_outputs[c]
            for c in sorted(metrics.final_outputs)
        },
    }
    write_text(spec.out_path, render_rows([doc], METRICS_FIELDS, spec.fmt))
    if spec.trace_path:
        write_text(spec.trace_path,
                   render_rows(trace_rows(trace), TRACE_FIELDS, spec.fmt))

    if not metrics.converged:
        print(f"no quiescence within {metrics.total_interactions} interactions",
              file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    if unique and metrics.converged:
        outputs = final.output_counts()
        if set(outputs) != {winner}:
            print(f"converged but outputs {dict(outputs)} != winner {winner}",
                  file=sys.stderr)
            return EXIT_VIOLATION
    return EXIT_OK


def spec_from_args(args: argparse.Namespace) -> ExperimentSpec:
    colors = tuple(load_colors(args.colors)) if args.colors else None
    exclude = (0, 1)
    if args.adversary_exclude:
        parts = parse_color_list(args.adversary_exclude)
        if len(parts) != 2:
            raise UsageError("--adversary-exclude needs exactly two indices")
        exclude = (parts[0], parts[1])
    return ExperimentSpec(
        colors=colors, random_colors=args.random_colors,
        n=args.n, k=args.k,
        scheduler=args.scheduler, seed=args.seed,
        cap=args.cap, fixed_steps=args.fixed_steps,
        assertions=args.assertion_level,
        adversary_exclude=exclude, adversary_release=args.adversary_release,
        trace_path=args.trace, out_path=args.out, fmt=args.format)


def cmd_run(args: argparse.Namespace) -> int:
    return run_experiment(spec_from_args(args))


def cmd_verify(args: argparse.Namespace) -> int:
    if args.instances is not None:
        if args.instances < 1:
            raise UsageError("--instances must be positive")
        rng = np.random.default_rng(args.seed)
        instances = (random_instance(rng, args.n_max, args.k_max)
                     for _ in range(args.instances))
    else:
        instances = enumerate_instances(args.n_max, args.k_max)
    report = verify_battery(instances, cap_cycles=args.cap)
    lines = [report.summary() + "\n"]
    for f in report.failures:
        lines.append(f"FAIL check={f.check} k={f.k} "
                     f"colors={list(f.colors)}: {f.detail}\n")
    write_text(args.out, "".join(lines))
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_sweep(args: argparse.Namespace) -> int:
    n_values = parse_color_list(args.n_list)
    k_values = parse_color_list(args.k_list)
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    if any(n < 1 for n in n_values) or any(k < 1 for k in k_values):
        raise UsageError("population sizes and color counts must be >= 1")
    rows = []
    all_converged = True
    for n in n_values:
        for k in k_values:
            interactions = []
            exchanges = []
            converged = 0
            for trial in range(args.trials):
                rng = np.random.default_rng([args.seed, n, k, trial])
                colors = [int(c) for c in rng.integers(0, k, size=n)]
                scheduler = make_scheduler(
                    args.scheduler, n,
                    seed=[args.seed, n, k, trial, 1])
                _, _, metrics = run(init_configuration(colors, k), scheduler,
                                    UntilQuiescent(args.cap),
                                    assertions="safety", trace="off")
                interactions.append(metrics.total_interactions)
                exchanges.append(metrics.ket_exchanges)
                converged += metrics.converged
            all_converged &= converged == args.trials
            rows.append({
                "n": n, "k": k, "trials": args.trials, "seed": args.seed,
                "converged": converged,
                "mean_interactions": round(sum(interactions) / len(interactions), 6),
                "max_interactions": max(interactions),
                "mean_ket_exchanges": round(sum(exchanges) / len(exchanges), 6),
                "max_ket_exchanges": max(exchanges),
            })
    write_text(args.out, render_rows(rows, SWEEP_FIELDS, args.format))
    return EXIT_OK if all_converged else EXIT_NO_CONVERGENCE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pluralitysim",
        description="Simulate a k**3-state plurality consensus protocol "
                    "and check it against closed-form predictions.",
        epilog="exit codes: 0 ok, 2 usage, 3 no quiescence within cap, "
               "4 invariant violation or failed check")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser(
        "run", help="simulate one population and write a metrics document")
    p_run.add_argument("--k", type=int, default=None,
                       help="number of colors (default: max color + 1)")
    p_run.add_argument("--n", type=int, default=None,
                       help="population size (needed with --random-colors)")
    p_run.add_argument("--colors", default=None,
                       help="input colors: inline list like 0,1,1 or 0:3,1:2, "
                            "or a path to a file of the same tokens")
    p_run.add_argument("--random-colors", default=None, metavar="SPEC",
                       help="uniform | weights=w0,w1,... | planted=<margin>")
    p_run.add_argument("--scheduler", default="roundrobin",
                       choices=["roundrobin", "random", "adversary"])
    p_run.add_argument("--seed", type=int, default=0,
                       help="seed for random colors and the random scheduler")
    p_run.add_argument("--cap", type=int, default=None,
                       help="stop after this many scheduling cycles of "
                            "n*(n-1)/2 interactions (default 50*n*n)")
    p_run.add_argument("--fixed-steps", type=int, default=None,
                       help="run exactly this many interactions instead of "
                            "running to quiescence")
    p_run.add_argument("--assert", dest="assertion_level", default="safety",
                       choices=["off", "safety", "full"],
                       help="runtime invariant checking level")
    p_run.add_argument("--trace", default=None, metavar="PATH",
                       help="write the changing-step event trace here")
    p_run.add_argument("--format", default="json-lines",
                       choices=["json-lines", "csv"])
    p_run.add_argument("--out", default=None, metavar="PATH",
                       help="metrics destination (default stdout)")
    p_run.add_argument("--adversary-exclude", default=None, metavar="I,J",
                       help="pair the adversary scheduler starves (default 0,1)")
    p_run.add_argument("--adversary-release", type=int, default=None,
                       help="step at which the starved pair is released "
                            "(default: never)")
    p_run.set_defaults(func=cmd_run)

    p_verify = sub.add_parser(
        "verify", help="check runs against the closed-form predictions")
    p_verify.add_argument("--n-max", type=int, required=True)
    p_verify.add_argument("--k-max", type=int, required=True)
    p_verify.add_argument("--instances", type=int, default=None,
                          help="sample this many random instances instead of "
                               "enumerating exhaustively")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--cap", type=int, default=None,
                          help="scheduling-cycle cap per instance")
    p_verify.add_argument("--out", default=None, metavar="PATH")
    p_verify.set_defaults(func=cmd_verify)

    p_sweep = sub.add_parser(
        "sweep", help="aggregate convergence cost over an n x k grid")
    p_sweep.add_argument("--n-list", required=True, metavar="N1,N2,...")
    p_sweep.add_argument("--k-list", required=True, metavar="K1,K2,...")
    p_sweep.add_argument("--trials", type=int, default=10)
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.add_argument("--scheduler", default="roundrobin",
                         choices=["roundrobin", "random"])
    p_sweep.add_argument("--cap", type=int, default=None)
    p_sweep.add_argument("--format", default="csv",
                         choices=["json-lines", "csv"])
    p_sweep.add_argument("--out", default=None, metavar="PATH")
    p_sweep.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError) as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
