"""Command-line front end: ``linsym --input systems.json --verify``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Sequence

from .errors import LinsymError, MalformedInput
from .pipeline import RunConfig, parse_input, render_text, run_report
from .verify import DEFAULT_EPSILONS

log = logging.getLogger("linsym")


def _epsilons(text: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad epsilon list {text!r}") from exc
    if not vals:
        raise argparse.ArgumentTypeError("empty epsilon list")
    return vals


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="linsym",
        description="Classify point symmetries of y'' = A y' + B y + f for constant 2x2 A, B.")
    p.add_argument("--input", type=Path, help="JSON system or list of systems (default: stdin)")
    p.add_argument("--output", type=Path, help="report destination (default: stdout)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--verify", action="store_true", help="also run numeric flow checks")
    p.add_argument("--normalize-lambda", action="store_true", help="dilate x so that lambda = 1")
    p.add_argument("--tol", type=float, default=1e-6, help="numeric pass threshold")
    p.add_argument("--seed", type=int, default=0, help="seed for random initial data")
    p.add_argument("--epsilons", type=_epsilons, default=DEFAULT_EPSILONS,
                   help="comma-separated flow parameters")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(input=args.input, output=args.output, format=args.format, verify=args.verify,
                     normalize_lambda=args.normalize_lambda, tol=args.tol, seed=args.seed,
                     epsilons=tuple(args.epsilons))


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def process(document: Any, cfg: RunConfig) -> tuple[list[str], int]:
    """Render every system in ``document``; returns (chunks, exit code).

    A failing item yields an error record and its exit code; the overall
    code is the first nonzero one encountered.
    """
    items = document if isinstance(document, list) else [document]
    chunks: list[str] = []
    code = 0
    for i, item in enumerate(items):
        try:
            doc, passed = run_report(parse_input(item), cfg)
        except LinsymError as exc:
            log.error("system %d: %s: %s", i, type(exc).__name__, exc)
            err = {"schema": 1, "index": i, "error": type(exc).__name__, "message": str(exc),
                   "exit_code": exc.exit_code}
            chunks.append(dumps(err) + "\n" if cfg.format == "json"
                          else f"error    : system {i}: {type(exc).__name__}: {exc}\n")
            code = code or exc.exit_code
            continue
        if not passed:
            code = code or 1
        chunks.append(dumps(doc) + "\n" if cfg.format == "json" else render_text(doc))
    return chunks, code


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
        raw = cfg.input.read_text() if cfg.input else sys.stdin.read()
        try:
            document = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"input is not JSON: {exc}") from exc
    except LinsymError as exc:
        print(f"linsym: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"linsym: {exc}", file=sys.stderr)
        return 2
    chunks, code = process(document, cfg)
    text = ("\n" if cfg.format == "text" else "").join(chunks)
    if cfg.output:
        cfg.output.write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
