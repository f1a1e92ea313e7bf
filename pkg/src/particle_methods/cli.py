"""Command-line front end: ``pm run | verify | compare | gen``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .instances import EXAMPLES
from .io import ConfigError, RunConfig, load_config, run_with_trace
from .kernel import EngineError
from .verify import CASES, PSE_MASS_DRIFT_BOUND, compare_analytic, verify_builtin

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

# Ceiling on transitions for `pm run` when neither the config nor the
# command line sets one.
DEFAULT_MAX_STEPS = 10_000_000


def _read_config(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from exc
    return load_config(text)


def cmd_run(args: argparse.Namespace) -> int:
    definition, config = _read_config(args.config)
    if args.trace_every is not None:
        config = RunConfig(config.method, config.state, args.trace_every, config.max_steps)
    limit = args.max_steps if args.max_steps is not None else config.max_steps
    if limit is None:
        limit = DEFAULT_MAX_STEPS
    if args.out == "-":
        _, count = run_with_trace(definition, config, sys.stdout, max_steps=limit)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as sink:
            _, count = run_with_trace(definition, config, sink, max_steps=limit)
    print(f"{count} transitions", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    names = [args.case] if args.case else list(CASES)
    failed = 0
    for name in names:
        for check in verify_builtin(name):
            print(f"[{name}] {check.line()}")
            failed += not check.passed
    print(f"{'FAILED' if failed else 'OK'}: {failed} failing check(s)")
    return EXIT_FAILED if failed else EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    definition, config = _read_config(args.config)
    if config.method != "pse_diffusion":
        raise ConfigError(f"method: compare needs pse_diffusion, got {config.method}")
    report = compare_analytic(config, args.at_time, definition=definition)
    print(json.dumps(report))
    ok = report["mass_drift"] < PSE_MASS_DRIFT_BOUND
    if args.linf_bound is not None:
        ok = ok and report["linf"] < args.linf_bound
    return EXIT_OK if ok else EXIT_FAILED


def cmd_gen(args: argparse.Namespace) -> int:
    sys.stdout.write(json.dumps(EXAMPLES[args.example](), indent=2) + "\n")
    return EXIT_OK


def _count(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pm", description="Run and verify particle methods.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a config and write a JSON Lines trace")
    p.add_argument("--config", required=True, help="JSON config file")
    p.add_argument("--out", required=True, help="trace file ('-' for stdout)")
    p.add_argument("--trace-every", type=_count, help="record every N transitions (0: final state only)")
    p.add_argument("--max-steps", type=_count, help=f"transition ceiling (default {DEFAULT_MAX_STEPS})")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify", help="run built-in verification cases")
    p.add_argument("--case", choices=sorted(CASES), help="single case (default: all)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compare", help="compare a PSE run with the analytic solution")
    p.add_argument("--config", required=True)
    p.add_argument("--at-time", type=float, required=True)
    p.add_argument("--linf-bound", type=float, help="also fail when the max error reaches this value")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("gen", help="print a built-in example config")
    p.add_argument("--example", required=True, choices=sorted(EXAMPLES))
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, EngineError, ArithmeticError, ValueError) as exc:
        print(f"pm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
