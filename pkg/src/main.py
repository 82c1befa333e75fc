from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from chars.gauss import kloosterman_gauss_sum
from kloosterman.moments import sheaf_sum_twisted
from modforms.newforms import a_p, b_p, f1_coefficients
from padic.hypergeom import g44_thm1, g1212_thm2
from ring.residue import balanced_lift, make_context, max_precision
from util.config_help import CONFIG_HELP, config_warnings
from util.errors import NslabError, UsageError
from verify.sweep import CHECKS, DEFAULT_GAMMA_PRECISION, FORMATS, gamma_precision, sweep

log = logging.getLogger("nslab")

EVAL_TARGETS = ("g44", "g1212", "tsheaf", "ap", "bsum")
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(verbose: int = 0) -> None:
    """NSLAB_LOG_LEVEL sets the base level; each -v lowers it one step."""
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, os.environ.get("NSLAB_LOG_LEVEL", "WARNING").upper(), logging.WARNING)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)


def run_eval(what: str, p: int, precision: int = DEFAULT_GAMMA_PRECISION, gamma_budget: int | None = None) -> dict:
    """One quantity at one prime; shared by the CLI and the web API."""
    if what not in EVAL_TARGETS:
        raise UsageError(f"unknown quantity {what!r}; choose from {', '.join(EVAL_TARGETS)}")
    payload: dict = {"what": what, "p": p}
    if what in ("g44", "g1212"):
        if p < 5:
            raise UsageError(f"{what} needs p >= 5, got p={p}")
        n = gamma_precision(p, precision, gamma_budget)
        ctx = make_context(p, n, with_gamma=True, gamma_budget=gamma_budget)
        value = g44_thm1(ctx) if what == "g44" else g1212_thm2(ctx)
        payload.update(precision=n, value=str(value), valuation=value.v)
    elif what == "tsheaf":
        payload["value"] = sheaf_sum_twisted(make_context(p, 1)).as_int()
    elif what == "ap":
        payload.update(a=a_p(p), b=b_p(p))
    else:
        n = max_precision(p)
        ctx = make_context(p, n)
        payload.update(precision=n, value=balanced_lift(ctx, kloosterman_gauss_sum(ctx).residue(n)))
    return payload


def coeffs_payload(upto: int) -> dict:
    return {"upto": upto, "coefficients": f1_coefficients(upto).to_list()}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nslab", description="nslab - verify Kloosterman sheaf-sum and hypergeometric identities"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run checks over a range of primes")
    v.add_argument(
        "--check", action="append", required=True, choices=[*CHECKS, "all"], help=CONFIG_HELP["check"]
    )
    v.add_argument("--pmin", type=int, required=True, help=CONFIG_HELP["pmin"])
    v.add_argument("--pmax", type=int, required=True, help=CONFIG_HELP["pmax"])
    v.add_argument("--precision", type=int, default=DEFAULT_GAMMA_PRECISION, help=CONFIG_HELP["precision"])
    v.add_argument("--threads", type=int, default=1, help=CONFIG_HELP["threads"])
    v.add_argument("--out", type=str, default=None, help=CONFIG_HELP["out"])
    v.add_argument("--format", choices=FORMATS, default="json", help=CONFIG_HELP["format"])
    v.add_argument("--gamma-budget", type=int, default=None, help=CONFIG_HELP["gamma_budget"])
    v.add_argument("--timings", action="store_true", help=CONFIG_HELP["timings"])
    v.add_argument("-v", "--verbose", action="count", default=0)

    e = sub.add_parser("eval", help="evaluate one quantity at one prime")
    e.add_argument("what", choices=EVAL_TARGETS, help=CONFIG_HELP["what"])
    e.add_argument("--p", type=int, required=True, help=CONFIG_HELP["p"])
    e.add_argument("--precision", type=int, default=DEFAULT_GAMMA_PRECISION, help=CONFIG_HELP["precision"])
    e.add_argument("-v", "--verbose", action="count", default=0)

    c = sub.add_parser("coeffs", help="print the q-expansion of f1")
    c.add_argument("--upto", type=int, required=True, help=CONFIG_HELP["upto"])
    c.add_argument("--out", type=str, default=None, help=CONFIG_HELP["out"])
    c.add_argument("-v", "--verbose", action="count", default=0)
    return parser


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        if args.command == "verify":
            for note in config_warnings(args.pmin, args.pmax, args.precision, args.gamma_budget):
                log.info(note)
            return sweep(
                args.pmin,
                args.pmax,
                args.check,
                N=args.precision,
                threads=args.threads,
                out_path=args.out,
                fmt=args.format,
                gamma_budget=args.gamma_budget,
                timings=args.timings,
            )
        if args.command == "eval":
            _emit(run_eval(args.what, args.p, args.precision), None)
        else:
            _emit(coeffs_payload(args.upto), args.out)
    except NslabError as exc:
        log.error("%s", exc)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
