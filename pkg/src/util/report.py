# src/util/report.py
from __future__ import annotations

import csv
import io
import json
from collections import Counter
from typing import Iterable

FIELDS = ("prime", "class_mod_12", "check_id", "lhs", "rhs", "precision", "pass", "runtime_ms")


def _rows(results) -> list[dict]:
    return [r.to_dict() for r in results]


def render_json(results) -> str:
    """JSON array of result rows; identical inputs give identical bytes."""
    return json.dumps(_rows(results), indent=2) + "\n"


def render_csv(results) -> str:
    """Header row plus one RFC-4180 row per result."""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=FIELDS)
    writer.writeheader()
    for row in _rows(results):
        row["pass"] = "true" if row["pass"] else "false"
        writer.writerow(row)
    return buf.getvalue()


def summarize(results, informational: Iterable[str] = ()) -> list[str]:
    """Return bullet-point lines describing a batch of results."""
    info = set(informational)
    msgs: list[str] = []
    counted = [r for r in results if r.check_id not in info]
    per_check = Counter(r.check_id for r in counted)
    failed = [r for r in counted if not r.passed]
    msgs.append(
        f"{len(counted) - len(failed)}/{len(counted)} checks passed over "
        f"{len({r.prime for r in results})} primes."
    )
    for check_id, n in sorted(per_check.items()):
        bad = sum(1 for r in failed if r.check_id == check_id)
        if bad:
            msgs.append(f"{check_id}: {bad} of {n} primes fail.")
    for r in failed:
        msgs.append(f"{r.check_id} fails at p={r.prime}: {r.lhs} vs {r.rhs} (N={r.precision}).")
    for r in results:
        if r.check_id in info:
            state = "holds" if r.passed else "does not hold"
            msgs.append(f"{r.check_id} at p={r.prime} {state} (informational).")
    if not results:
        msgs.append("No check applied to the requested primes.")
    return msgs
