# src/verify/sweep.py
"""Run checks over a range of primes and write the report."""
from __future__ import annotations

import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import replace
from pathlib import Path
from typing import Callable

from sympy import primerange

from padic.gamma import resolve_gamma_budget
from ring.residue import PrimeContext, make_context, max_precision
from util.errors import TableBudgetExceeded, UsageError, WrongResidueClass
from util.report import render_csv, render_json, summarize
from verify.checks import (
    CheckResult,
    check_b_intermediate,
    check_companion,
    check_dgp_bridge,
    check_intro_identity,
    check_lemma_suite,
    check_master_identity,
    check_prop_equivalence,
    check_thm1,
    check_thm1_full,
    check_thm2,
    check_thm2_full,
    check_thm3,
    check_thm4,
)

log = logging.getLogger(__name__)

DEFAULT_GAMMA_PRECISION = 2
MIN_SWEEP_PRIME = 5
FORMATS = ("json", "csv")

# check id -> (function, which context it runs on)
CHECKS: dict[str, tuple[Callable[[PrimeContext], CheckResult], str]] = {
    "master": (check_master_identity, "jacobi"),
    "b_intermediate": (check_b_intermediate, "jacobi"),
    "thm1": (check_thm1, "gamma"),
    "thm2": (check_thm2, "gamma"),
    "thm1_full": (check_thm1_full, "jacobi"),
    "thm2_full": (check_thm2_full, "jacobi"),
    "thm3": (check_thm3, "gamma"),
    "thm4": (check_thm4, "gamma"),
    "prop": (check_prop_equivalence, "gamma"),
    "intro": (check_intro_identity, "gamma"),
    "dgp": (check_dgp_bridge, "jacobi"),
    "lemmas": (check_lemma_suite, "gamma"),
    "companion": (check_companion, "gamma"),
}
# reported, never counted as failures
INFORMATIONAL = frozenset({"companion"})


def expand_checks(names: list[str]) -> list[str]:
    """Resolve 'all' and drop duplicates, keeping registry order."""
    wanted = set()
    for name in names:
        if name == "all":
            wanted.update(CHECKS)
        elif name in CHECKS:
            wanted.add(name)
        else:
            raise UsageError(f"unknown check {name!r}; choose from {', '.join(CHECKS)} or all")
    return [name for name in CHECKS if name in wanted]


def gamma_precision(p: int, N: int, gamma_budget: int | None = None) -> int:
    """N lowered until the Gamma table for p^N fits the budget."""
    entries = resolve_gamma_budget(gamma_budget)
    N = min(N, max_precision(p))
    while N > 1 and p**N > entries:
        N -= 1
    if p**N > entries:
        raise TableBudgetExceeded(f"even the p={p}, N=1 Gamma table exceeds {entries} entries")
    return N


def run_prime(
    p: int,
    checks: list[str],
    N: int = DEFAULT_GAMMA_PRECISION,
    gamma_budget: int | None = None,
    timings: bool = False,
) -> list[CheckResult]:
    """Every requested check at p, skipping class mismatches."""
    contexts: dict[str, PrimeContext] = {}

    def context(kind: str) -> PrimeContext:
        if kind not in contexts:
            if kind == "gamma":
                n = gamma_precision(p, N, gamma_budget)
                contexts[kind] = make_context(p, n, with_gamma=True, gamma_budget=gamma_budget)
            else:
                contexts[kind] = make_context(p, max_precision(p))
        return contexts[kind]

    out = []
    for name in checks:
        fn, kind = CHECKS[name]
        start = time.perf_counter()
        try:
            res = fn(context(kind))
        except WrongResidueClass as exc:
            log.info("skip %s: %s", name, exc)
            continue
        elapsed = round((time.perf_counter() - start) * 1000.0, 3) if timings else 0.0
        out.append(replace(res, runtime_ms=elapsed))
    return out


def collect(
    pmin: int,
    pmax: int,
    checks: list[str],
    N: int = DEFAULT_GAMMA_PRECISION,
    threads: int = 1,
    gamma_budget: int | None = None,
    timings: bool = False,
) -> list[CheckResult]:
    """Results for every prime in [pmin, pmax], ordered by prime then check."""
    if pmin < MIN_SWEEP_PRIME:
        raise UsageError(f"pmin={pmin} is below {MIN_SWEEP_PRIME}")
    if pmax < pmin:
        raise UsageError(f"pmax={pmax} is below pmin={pmin}")
    if N < 1:
        raise UsageError(f"precision N={N} must be >= 1")
    checks = expand_checks(checks)
    primes = [int(p) for p in primerange(pmin, pmax + 1)]
    log.info("sweep over %d primes in [%d, %d]: %s", len(primes), pmin, pmax, ", ".join(checks))

    if threads <= 1 or len(primes) <= 1:
        by_prime = {p: run_prime(p, checks, N, gamma_budget, timings) for p in primes}
    else:
        by_prime = {}
        with ProcessPoolExecutor(max_workers=threads) as executor:
            futures = {
                executor.submit(run_prime, p, checks, N, gamma_budget, timings): p for p in primes
            }
            for future in as_completed(futures):
                by_prime[futures[future]] = future.result()
    return [res for p in primes for res in by_prime[p]]


def exit_code(results: list[CheckResult]) -> int:
    return 0 if all(r.passed for r in results if r.check_id not in INFORMATIONAL) else 1


def sweep(
    pmin: int,
    pmax: int,
    checks: list[str],
    N: int = DEFAULT_GAMMA_PRECISION,
    threads: int = 1,
    out_path: str | Path | None = None,
    fmt: str = "json",
    gamma_budget: int | None = None,
    timings: bool = False,
) -> int:
    """Run, write the report to out_path (stdout when None) and return the exit code."""
    if fmt not in FORMATS:
        raise UsageError(f"format {fmt!r} not in {FORMATS}")
    results = collect(pmin, pmax, checks, N, threads, gamma_budget, timings)
    text = render_json(results) if fmt == "json" else render_csv(results)
    if out_path is None:
        sys.stdout.write(text)
    else:
        Path(out_path).write_text(text, encoding="utf-8")
    for line in summarize(results, INFORMATIONAL):
        log.info(line)
    return exit_code(results)
