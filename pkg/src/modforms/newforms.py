# src/modforms/newforms.py
"""The weight-4 newforms f1 (level 8) and its quadratic twist f2 (level 16).

    f1 = q prod (1 - q^2n)^4 (1 - q^4n)^4 = sum a(n) q^n,  b(p) = phi(-1) a(p).
"""
from __future__ import annotations

import logging
import math
from functools import lru_cache

from sympy import factorint, isprime, primerange

from modforms.series import SeriesZ, eta_factor
from util.errors import BadArgument, NotPrime, OrderTooSmall

log = logging.getLogger(__name__)

WEIGHT = 4


@lru_cache(maxsize=8)
def f1_coefficients(upto: int) -> SeriesZ:
    """q-expansion of f1 through q^upto."""
    if upto < 2:
        raise BadArgument(f"expansion order {upto} must be >= 2")
    body = eta_factor(2, 4, upto - 1) * eta_factor(4, 4, upto - 1)
    log.debug("f1 expanded to q^%d", upto)
    return SeriesZ([0] + body.to_list(), upto)


def _odd_prime(p: int) -> None:
    if p == 2 or not isprime(p):
        raise NotPrime(f"p={p} is not an odd prime")


def a_p(p: int, series: SeriesZ | None = None) -> int:
    """a(p) read off f1; a given series must reach q^p."""
    _odd_prime(p)
    if series is None:
        series = f1_coefficients(max(p, 2))
    if p > series.order:
        raise OrderTooSmall(f"series to q^{series.order} does not reach p={p}")
    return series.coeff(p)


def b_p(p: int, series: SeriesZ | None = None) -> int:
    """b(p) = phi(-1) a(p) = (-1)^((p-1)/2) a(p)."""
    return (-1) ** ((p - 1) // 2) * a_p(p, series)


def hecke_check(upto: int) -> bool:
    """Multiplicativity, the prime-power recursion and a(2^k) = 0 through q^upto."""
    f = f1_coefficients(upto)
    a = f.to_list()
    ok = a[1] == 1
    for n in range(2, upto + 1):
        fac = factorint(n)
        if len(fac) > 1:
            parts = [q**e for q, e in fac.items()]
            want = math.prod(a[d] for d in parts)
        else:
            (q, e), = fac.items()
            if q == 2:
                want = 0
            elif e == 1:
                continue
            else:
                # a(q^e) = a(q) a(q^(e-1)) - q^3 a(q^(e-2))
                want = a[q] * a[q ** (e - 1)] - q ** (WEIGHT - 1) * a[q ** (e - 2)]
        if a[n] != want:
            log.warning("Hecke relation fails at n=%d: a(n)=%d, expected %d", n, a[n], want)
            ok = False
    return ok


def deligne_check(upto: int) -> bool:
    """|a(p)| <= 2 p^(3/2), compared as a(p)^2 <= 4 p^3."""
    f = f1_coefficients(upto)
    ok = True
    for p in primerange(3, upto + 1):
        ap = f.coeff(p)
        if ap * ap > 4 * p ** (WEIGHT - 1):
            log.warning("Deligne bound fails at p=%d: a(p)=%d", p, ap)
            ok = False
    return ok
