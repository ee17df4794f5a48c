"""Command-line interface: ``hyperrel {exact,mc,alg1,alg2,gen,selftest}``.

Exit status is 0 on success, 1 on a usage or input error, 2 when an estimator
gives up (size cap or recursion budget), and 3 when ``selftest`` finds a
failing check. ``HYPERREL_SEED`` overrides ``--seed`` when set.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from . import __version__
from .enumeration import DESK_ALG1, PAPER_ALG1, estimate_alg1
from .errors import BudgetExhausted, InvariantViolation, ParseError, TooLargeForExact
from .exact import exact_unreliability
from .io import RunReport, generate, read_hypergraph, serialize_hypergraph
from .revelation import DESK_ALG2, PAPER_ALG2, estimate_alg2
from .stats import DEFAULT_GROUPS, amplify, monte_carlo_unreliability, new_seed

SEED_ENV = "HYPERREL_SEED"
ALG1_RELVAR = 1.0
ALG2_RELVAR = 3.0


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer: {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hyperrel", description="Hypergraph unreliability estimation.")
    parser.add_argument("--version", action="version", version=f"hyperrel {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, estimator=True):
        src = sp.add_mutually_exclusive_group(required=True)
        src.add_argument("--input", metavar="FILE", help="hMETIS-style hypergraph file")
        src.add_argument("--gen", metavar="SPEC", help="generator, e.g. sunflower:5 or planted-cut:8,4,6,2")
        sp.add_argument("--seed", type=_u64, default=None)
        sp.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
        if estimator:
            sp.add_argument("--p", type=float, required=True, help="edge failure probability")
            sp.add_argument("--json", action="store_true", help="print the report as JSON")

    sp = sub.add_parser("exact", help="exact unreliability by enumeration")
    common(sp)
    sp.add_argument("--max-wedges", type=int, default=25)

    sp = sub.add_parser("mc", help="plain Monte Carlo estimate")
    common(sp)
    sp.add_argument("--trials", type=int, default=10_000)
    sp.add_argument("--workers", type=int, default=1, help="threads drawing trial chunks")

    for name in ("alg1", "alg2"):
        sp = sub.add_parser(name, help=f"{'enumeration' if name == 'alg1' else 'DNF-sampling'} estimator")
        common(sp)
        if name == "alg2":
            sp.add_argument("--delta", type=float, required=True, help="additive error budget")
        sp.add_argument("--eps", type=float, default=None, help="median-of-means target accuracy")
        sp.add_argument("--profile", choices=("paper", "desk"), default="desk")
        sp.add_argument("--groups", type=int, default=DEFAULT_GROUPS)
        sp.add_argument("--workers", type=int, default=1, help="threads drawing amplifier samples")

    sp = sub.add_parser("gen", help="print a generated hypergraph in hMETIS format")
    common(sp, estimator=False)

    sub.add_parser("selftest", help="run the built-in invariant checks")
    return parser


def _resolve_seed(args) -> int:
    env = os.environ.get(SEED_ENV)
    if env is not None and env.strip():
        try:
            return _u64(env.strip())
        except (ValueError, argparse.ArgumentTypeError):
            raise UsageError(f"{SEED_ENV} must be an unsigned 64-bit integer") from None
    return args.seed if args.seed is not None else new_seed()


def _load(args, seed: int):
    if args.input:
        return read_hypergraph(args.input)
    return generate(args.gen, seed=seed)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _run_estimator(args, g, seed: int) -> RunReport:
    start = time.perf_counter()
    delta = getattr(args, "delta", None)
    eps = getattr(args, "eps", None)
    profile_name = getattr(args, "profile", "")
    calls = 0
    samples = 1
    if args.command == "exact":
        estimate = exact_unreliability(g, args.p, max_wedges=args.max_wedges)
    elif args.command == "mc":
        run = monte_carlo_unreliability(g, args.p, args.trials, seed, workers=args.workers)
        estimate, samples = run.estimate, run.samples_used
    else:
        if args.command == "alg1":
            profile = PAPER_ALG1 if profile_name == "paper" else DESK_ALG1
            once = lambda rng: estimate_alg1(g, args.p, profile, rng)  # noqa: E731
            relvar = ALG1_RELVAR
        else:
            profile = PAPER_ALG2 if profile_name == "paper" else DESK_ALG2
            once = lambda rng: estimate_alg2(g, args.p, delta, profile, rng)  # noqa: E731
            relvar = ALG2_RELVAR
        if eps is None:
            run = once(seed)
            estimate, samples, calls = run.estimate, run.samples_used, run.recursion_calls
        else:
            runs = []

            def source(rng):
                r = once(rng)
                runs.append((r.samples_used, r.recursion_calls))
                return r.estimate

            estimate, _ = amplify(
                source, eps, relvar=relvar, groups=args.groups, seed=seed, workers=args.workers
            )
            samples = sum(s for s, _ in runs)
            calls = sum(c for _, c in runs)
    elapsed = (time.perf_counter() - start) * 1000.0
    return RunReport(
        estimate=float(estimate),
        algorithm=args.command,
        p=args.p,
        delta=delta,
        seed=seed,
        profile=profile_name,
        elapsed_ms=elapsed,
        recursion_calls=calls,
        samples_used=samples,
        eps=eps,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "selftest":
            from .selftest import run_selftest

            return 0 if run_selftest() == 0 else 3
        seed = _resolve_seed(args)
        g = _load(args, seed)
        if args.command == "gen":
            _emit(serialize_hypergraph(g).rstrip("\n"), args.out)
            return 0
        if not 0.0 <= args.p <= 1.0:
            raise UsageError("--p must lie in [0, 1]")
        report = _run_estimator(args, g, seed)
    except (UsageError, ParseError, ValueError, OSError) as exc:
        print(f"hyperrel: error: {exc}", file=sys.stderr)
        return 1
    except (TooLargeForExact, BudgetExhausted, InvariantViolation) as exc:
        print(f"hyperrel: estimation failed: {exc}", file=sys.stderr)
        return 2
    _emit(report.to_json() if args.json else report.to_text(), args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
