"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 timeout.
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time

from . import editscript
from .baselines import DEFAULT_KEYWORDS, bigram_diff, keyword_search
from .evaluation import (
    DEFAULT_TIMEOUT_S,
    generate_corpus,
    load_corpus,
    run_corpus,
    sweep_thresholds,
    write_metrics_csv,
    write_sweep_csv,
)
from .lcs import DiffTimeout
from .logmodel import load_log
from .similarity import SimilarityParams
from .synthetic import MutationRates

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_TIMEOUT = 3

_MARKERS = {
    editscript.UNCHANGED: "  ",
    editscript.UPDATED: "U ",
    editscript.ADDED: "+ ",
    editscript.DELETED: "- ",
    editscript.MOVED_UNCHANGED: "M ",
    editscript.MOVED_UPDATED: "MU",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _threshold(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"{value} is not in [0, 1]")
    return value


def _positive(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cidiff", description="Build-log differencing toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    diff = sub.add_parser("diff", help="diff a passing and a failing log")
    diff.add_argument("passing")
    diff.add_argument("failing")
    diff.add_argument("--algorithm", choices=["cidiff", "lcs", "bigram", "keyword"], default="cidiff")
    diff.add_argument("--line-sim", type=_threshold, default=SimilarityParams().line_threshold)
    diff.add_argument("--token-sim", type=_threshold, default=SimilarityParams().token_threshold)
    diff.add_argument("--format", choices=["text", "json"], default="text")
    diff.add_argument("--timeout", type=_positive, default=DEFAULT_TIMEOUT_S, help="seconds")
    diff.add_argument("--keywords", default=",".join(DEFAULT_KEYWORDS), help="comma-separated")
    diff.add_argument("--keep-timestamps", action="store_true")
    diff.add_argument("--output", default=None, help="write to a file instead of stdout")

    ev = sub.add_parser("eval", help="run algorithms over a corpus and write metrics CSV")
    ev.add_argument("corpus_root")
    ev.add_argument("--output", default="eval.csv")
    ev.add_argument("--algorithms", default="cidiff,lcs")
    ev.add_argument("--line-sim", type=_threshold, default=SimilarityParams().line_threshold)
    ev.add_argument("--token-sim", type=_threshold, default=SimilarityParams().token_threshold)
    ev.add_argument("--timeout", type=_positive, default=DEFAULT_TIMEOUT_S)
    ev.add_argument("--jobs", type=int, default=1)
    ev.add_argument("--keep-timestamps", action="store_true")

    gen = sub.add_parser("gen", help="generate a synthetic regression corpus")
    gen.add_argument("out_root")
    gen.add_argument("--count", type=int, default=10)
    gen.add_argument("--size", type=int, default=500)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--update-rate", type=float, default=MutationRates().update)
    gen.add_argument("--delete-rate", type=float, default=MutationRates().delete)
    gen.add_argument("--insert-rate", type=float, default=MutationRates().insert)
    gen.add_argument("--move-rate", type=float, default=MutationRates().move)

    sweep = sub.add_parser("sweep", help="threshold grid sweep over an annotated corpus")
    sweep.add_argument("corpus_root")
    sweep.add_argument("--step", type=_threshold, default=0.1)
    sweep.add_argument("--output", default="sweep.csv")
    sweep.add_argument("--jobs", type=int, default=1)
    sweep.add_argument("--keep-timestamps", action="store_true")
    return parser


def _render_text(script: editscript.EditScript, passing, failing) -> str:
    lines = []
    for action in script.actions:
        ref = "" if action.ref is None else str(action.ref)
        mod = "" if action.mod is None else str(action.mod)
        text = failing[action.mod].stripped if action.mod is not None else passing[action.ref].stripped
        lines.append(f"{_MARKERS[action.kind]} {ref:>6} {mod:>6}  {text}")
    return "\n".join(lines) + ("\n" if lines else "")


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w") as handle:
            handle.write(text)


def _cmd_diff(args) -> int:
    params = SimilarityParams(args.line_sim, args.token_sim)
    strip = not args.keep_timestamps
    try:
        passing = load_log(args.passing, strip_timestamps=strip)
        failing = load_log(args.failing, strip_timestamps=strip)
    except OSError as exc:
        print(f"cidiff: {exc}", file=sys.stderr)
        return EXIT_IO
    deadline = time.monotonic() + args.timeout
    try:
        if args.algorithm in ("cidiff", "lcs"):
            build = editscript.cidiff_script if args.algorithm == "cidiff" else editscript.lcs_diff
            script = build(passing, failing, params, deadline)
            if args.format == "json":
                _emit(editscript.to_json(script, indent=2) + "\n", args.output)
            else:
                _emit(_render_text(script, passing, failing), args.output)
        else:
            if args.algorithm == "keyword":
                keywords = [k for k in args.keywords.split(",") if k]
                flags = keyword_search(failing, keywords)
            else:
                flags = bigram_diff(passing, failing)
            indices = sorted(flags.mod_indices)
            if args.format == "json":
                import json as _json

                _emit(_json.dumps(indices) + "\n", args.output)
            else:
                body = "".join(f"+  {i:>6}  {failing[i].stripped}\n" for i in indices)
                _emit(body, args.output)
    except DiffTimeout:
        print("cidiff: diff timed out", file=sys.stderr)
        return EXIT_TIMEOUT
    except OSError as exc:
        print(f"cidiff: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _cmd_eval(args) -> int:
    try:
        cases = load_corpus(args.corpus_root, strip_timestamps=not args.keep_timestamps)
    except OSError as exc:
        print(f"cidiff: {exc}", file=sys.stderr)
        return EXIT_IO
    names = [n for n in args.algorithms.split(",") if n]
    params = SimilarityParams(args.line_sim, args.token_sim)
    results = run_corpus(cases, names, params, timeout_s=args.timeout, jobs=args.jobs)
    try:
        write_metrics_csv(results, args.output)
    except OSError as exc:
        print(f"cidiff: {exc}", file=sys.stderr)
        return EXIT_IO
    finished = [m for m in results if m.p_size is not None]
    if finished:
        med_size = statistics.median(m.p_size for m in finished)
        med_added = statistics.median(m.p_added for m in finished)
        print(f"cases: {len(results)}  median p_size: {med_size:.2f}%  median p_added: {med_added:.2f}%")
    else:
        print(f"cases: {len(results)}")
    print(f"metrics written to {args.output}")
    return EXIT_OK


def _cmd_gen(args) -> int:
    rates = MutationRates(
        update=args.update_rate,
        delete=args.delete_rate,
        insert=args.insert_rate,
        move=args.move_rate,
    )
    try:
        written = generate_corpus(
            args.out_root, count=args.count, size=args.size, seed=args.seed, rates=rates
        )
    except OSError as exc:
        print(f"cidiff: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {len(written)} cases under {args.out_root}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    try:
        cases = load_corpus(args.corpus_root, strip_timestamps=not args.keep_timestamps)
    except OSError as exc:
        print(f"cidiff: {exc}", file=sys.stderr)
        return EXIT_IO
    if not any(c.annotations for c in cases):
        print("cidiff: no case in the corpus carries annotations", file=sys.stderr)
        return EXIT_IO
    cells = sweep_thresholds(cases, grid_step=args.step, jobs=args.jobs)
    try:
        write_sweep_csv(cells, args.output)
    except OSError as exc:
        print(f"cidiff: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"{len(cells)} grid cells written to {args.output}")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "diff": _cmd_diff,
        "eval": _cmd_eval,
        "gen": _cmd_gen,
        "sweep": _cmd_sweep,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
