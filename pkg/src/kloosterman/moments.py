# src/kloosterman/moments.py
"""Exact twisted Kloosterman moments from nested Legendre sums.

    S(m+1, phi) = p phi(-1) sum_{x_1..x_m != 0} phi(x_1 + ... + x_m + 1) phi(1/x_1 + ... + 1/x_m + 1)

Two-variable inner sums go through the pair count C[u, v], the number of
(x, y) in (F_p^x)^2 with x + y = u and 1/x + 1/y = v, so every quantity is
a signed integer reduction over numpy arrays.
"""
from __future__ import annotations

import logging
from functools import lru_cache

import numpy as np

from chars.characters import legendre, legendre_table
from finite.greene import f21
from kloosterman.sums import inverse_table
from ring.residue import PrimeContext, make_context
from ring.scaled import PPowerRational
from util.errors import BadArgument, Unsupported, ZeroArgument

log = logging.getLogger(__name__)

EXACT_ORDERS = (2, 3, 4)


@lru_cache(maxsize=8)
def _pair_counts(p: int) -> np.ndarray:
    ctx = make_context(p, 1)
    inv = inverse_table(ctx)
    xs = np.arange(1, p, dtype=np.int64)
    x, y = np.meshgrid(xs, xs, indexing="ij")
    counts = np.zeros((p, p), dtype=np.int64)
    np.add.at(counts, ((x + y) % p, (inv[x] + inv[y]) % p), 1)
    counts.flags.writeable = False
    log.debug("pair counts for p=%d", p)
    return counts


def pair_counts(ctx: PrimeContext) -> np.ndarray:
    return _pair_counts(ctx.p)


def twisted_moment(ctx: PrimeContext, n: int) -> PPowerRational:
    """S(n, phi) = sum_a phi(a) K(a)^n for n in 2..4."""
    if n not in EXACT_ORDERS:
        raise Unsupported(f"exact moment of order n={n} (supported: {EXACT_ORDERS})")
    p = ctx.p
    phi = legendre_table(ctx)
    us = np.arange(p, dtype=np.int64)
    if n == 2:
        xs = us[1:]
        inner = int(np.sum(phi[(xs + 1) % p] * phi[(inverse_table(ctx)[xs] + 1) % p]))
    elif n == 3:
        shifted = phi[(us + 1) % p]
        inner = int(shifted @ pair_counts(ctx) @ shifted)
    else:
        inv = inverse_table(ctx)
        a = us[1:]
        left = phi[(us[None, :] + a[:, None] + 1) % p]
        right = phi[(us[None, :] + inv[a][:, None] + 1) % p]
        inner = int(np.sum((left @ pair_counts(ctx)) * right))
    value = p * legendre(ctx, -1) * inner
    log.debug("S(%d, phi) at p=%d = %d", n, p, value)
    return PPowerRational(value, 0, p)


def F_of(ctx: PrimeContext, a: int) -> PPowerRational:
    """F(a) = sum_{x,y != 0} phi(x + y + a + 1) phi(1/x + 1/y + 1/a + 1)."""
    p = ctx.p
    a %= p
    if a == 0:
        raise ZeroArgument("F(a) needs a != 0")
    phi = legendre_table(ctx)
    us = np.arange(p, dtype=np.int64)
    inv_a = int(inverse_table(ctx)[a])
    left = phi[(us + a + 1) % p]
    right = phi[(us + inv_a + 1) % p]
    return PPowerRational(int(left @ pair_counts(ctx) @ right), 0, p)


def sheaf_sum_twisted(ctx: PrimeContext) -> PPowerRational:
    """T_{4,phi} = sum_a phi(a)(K^4 - 3pK^2 + p^2) = S(4, phi) - 3p S(2, phi)."""
    p = ctx.p
    return twisted_moment(ctx, 4) - twisted_moment(ctx, 2) * (3 * p)


def sheaf_sum_via_f21(ctx: PrimeContext) -> PPowerRational:
    """T_{4,phi} from T/p = p + p^2 sum_{x != 0} phi(x) 2F1(x)^2."""
    p = ctx.p
    total = PPowerRational(0, 0, p)
    for x in range(1, p):
        total = total + f21(ctx, x) ** 2 * legendre(ctx, x)
    return (total * p**2 + p) * p


def lemma32_check(ctx: PrimeContext, a: int) -> bool:
    """F(a) = p^2 phi(a) 2F1(-a)^2 for a not in {0, 1, -1}."""
    p = ctx.p
    a %= p
    if a in (0, 1, p - 1):
        raise BadArgument(f"a={a} must not be 0 or +-1 mod {p}")
    return F_of(ctx, a) == f21(ctx, -a) ** 2 * (p * p * legendre(ctx, a))


def lemma33_check(ctx: PrimeContext) -> bool:
    """phi(-1)F(1) = p^2 phi(-1) 2F1(-1)^2 - p and phi(-1)F(-1) = p^2 2F1(1)^2 - p."""
    p = ctx.p
    s = legendre(ctx, -1)
    at_one = F_of(ctx, 1) * s == f21(ctx, -1) ** 2 * (p * p * s) - p
    at_minus_one = F_of(ctx, -1) * s == f21(ctx, 1) ** 2 * (p * p) - p
    return at_one and at_minus_one
