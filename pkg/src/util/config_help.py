# src/util/config_help.py
from __future__ import annotations

from padic.gamma import BYTES_PER_ENTRY, resolve_gamma_budget
from ring.residue import MAX_MODULUS

CONFIG_HELP = {
    "check": (
        "Identity to verify; repeat the flag for several.\n"
        "- master: T/p against the 2F1/3F2 combination and the Jacobi-route sum.\n"
        "- thm1/thm2: G44 (p = 1, 7 mod 12) and G12 (p = 5, 11 mod 12) forms.\n"
        "- thm1_full/thm2_full: the same totals against the Jacobi-route sum,\n"
        "  compared at every digit it carries.\n"
        "- thm3/thm4: the same identities solved for a(p) and b(p).\n"
        "- prop, intro, dgp, lemmas, b_intermediate, companion, or all."
    ),
    "pmin": "Smallest prime to test. Must be at least 5.",
    "pmax": "Largest prime to test (inclusive).",
    "precision": (
        "p-adic precision N for the Gamma route. The Gamma table holds p^N "
        "entries, so N is lowered per prime until it fits the budget. "
        "Jacobi-route checks always use the largest N with p^N < 2^63."
    ),
    "threads": "Worker processes; primes are spread across them.",
    "out": "Report path. Without it the report goes to stdout.",
    "format": "Report format: json (array of rows) or csv (header plus rows).",
    "gamma_budget": (
        "Gamma table budget in bytes (8 per entry). Overrides NSLAB_GAMMA_BUDGET; "
        "the default is 2^27 entries."
    ),
    "timings": "Record runtime_ms per check. Without it runtime_ms is 0 and reports are reproducible.",
    "p": "Prime for a single evaluation.",
    "what": (
        "Quantity to evaluate.\n"
        "- g44, g1212: the G-functions of the two theorems.\n"
        "- tsheaf: the twisted sheaf sum T.\n"
        "- ap: a(p) and b(p).\n"
        "- bsum: the Gauss-sum total B' (or D)."
    ),
    "upto": "Order of the q-expansion of f1.",
}


def config_warnings(pmin: int, pmax: int, precision: int, gamma_budget: int | None = None) -> list[str]:
    """Return human-readable warnings about current settings."""
    notes: list[str] = []
    if pmin < 5:
        notes.append(f"pmin={pmin} is below 5; sweeps refuse primes 2 and 3.")
    if pmax < pmin:
        notes.append(f"pmax={pmax} is below pmin={pmin}; nothing will run.")
    entries = resolve_gamma_budget(gamma_budget)
    top = max(pmax, 2)
    if top**precision >= MAX_MODULUS:
        notes.append(f"{top}^{precision} does not fit below 2^63; N will be capped.")
    if top**precision > entries:
        need = top**precision * BYTES_PER_ENTRY
        notes.append(
            f"Gamma table for {top}^{precision} needs {need} bytes; N will be lowered for large primes."
        )
    if precision < 2:
        notes.append("N=1 only checks identities mod p; use N >= 2 for real evidence.")
    if pmax > 500:
        notes.append("Lemma and exact moment checks grow like p^3; expect long runs above p=500.")
    return notes
