# src/kloosterman/sums.py
"""Kloosterman sums in floating point, used as an independent oracle.

K(a) = sum_{x != 0} cos(2 pi (x + a/x) / p). The sine parts cancel in pairs
x <-> a/x, so only the cosine table is needed.
"""
from __future__ import annotations

import logging
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from chars.characters import legendre_table
from ring.residue import PrimeContext
from util.errors import AccuracyBudget, ZeroArgument

log = logging.getLogger(__name__)

MAX_FLOAT_ORDER = 8
ROUNDING_TOLERANCE = 1e-3
# rows of the (a, x) grid handled per chunk
CHUNK_ROWS = 256


@lru_cache(maxsize=32)
def cos_table(p: int) -> np.ndarray:
    """cos(2 pi k / p) for k = 0..p-1."""
    table = np.cos(2.0 * np.pi * np.arange(p) / p)
    table.flags.writeable = False
    return table


def inverse_table(ctx: PrimeContext) -> np.ndarray:
    """x^-1 mod p for x = 0..p-1, with 0 -> 0."""
    p, q = ctx.p, ctx.p - 1
    xs = np.arange(1, p, dtype=np.int64)
    inv = np.zeros(p, dtype=np.int64)
    inv[1:] = ctx.omega_pow[(-ctx.dlog[xs]) % q] % p
    return inv


def kloosterman_float(ctx: PrimeContext, a: int) -> float:
    """K(a) as a double; K(0) = -1."""
    p = ctx.p
    xs = np.arange(1, p, dtype=np.int64)
    idx = (xs + (a % p) * inverse_table(ctx)[xs]) % p
    return float(cos_table(p)[idx].sum())


def kloosterman_all(ctx: PrimeContext) -> np.ndarray:
    """K(a) for a = 0..p-1 in one vectorised sweep."""
    p = ctx.p
    cos = cos_table(p)
    xs = np.arange(1, p, dtype=np.int64)
    inv = inverse_table(ctx)[xs]
    out = np.empty(p, dtype=np.float64)
    for start in range(0, p, CHUNK_ROWS):
        a = np.arange(start, min(start + CHUNK_ROWS, p), dtype=np.int64)
        idx = (xs[None, :] + a[:, None] * inv[None, :]) % p
        out[a] = cos[idx].sum(axis=1)
    return out


class KloostermanRoots(NamedTuple):
    """Roots of X^2 + K(a) X + p, with g in the upper half plane."""

    a: int
    g: complex
    h: complex


def _roots(p: int, K: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # |K| <= 2 sqrt(p) keeps the discriminant non-positive
    im = np.sqrt(np.clip(4.0 * p - K * K, 0.0, None))
    g = (-K + 1j * im) / 2.0
    return g, np.conj(g)


def kloosterman_roots(ctx: PrimeContext, a: int) -> KloostermanRoots:
    if a % ctx.p == 0:
        raise ZeroArgument("Kloosterman roots need a != 0")
    g, h = _roots(ctx.p, np.array([kloosterman_float(ctx, a)]))
    return KloostermanRoots(a % ctx.p, complex(g[0]), complex(h[0]))


def weil_check(ctx: PrimeContext, slack: float = 1e-6) -> bool:
    """|K(a)| <= 2 sqrt(p) for every a != 0."""
    K = kloosterman_all(ctx)[1:]
    return bool(np.all(np.abs(K) <= 2.0 * np.sqrt(ctx.p) + slack))


def _weights(ctx: PrimeContext, twisted: bool, with_zero: bool) -> np.ndarray:
    if twisted:
        return legendre_table(ctx).astype(np.float64)
    w = np.ones(ctx.p, dtype=np.float64)
    if not with_zero:
        w[0] = 0.0
    return w


def _check_order(n: int) -> None:
    if not 1 <= n <= MAX_FLOAT_ORDER:
        raise AccuracyBudget(f"float order n={n} outside 1..{MAX_FLOAT_ORDER}")


def _rounded(value: float, what: str) -> float:
    residual = abs(value - round(value))
    if residual > ROUNDING_TOLERANCE:
        raise AccuracyBudget(f"{what} = {value!r} is {residual:.2e} away from an integer")
    return value


def sheaf_sum_float(ctx: PrimeContext, n: int, twisted: bool = True) -> float:
    """sum_{a != 0} w(a) (g^n + g^(n-1) h + ... + h^n), w = phi or 1."""
    _check_order(n)
    p = ctx.p
    g, h = _roots(p, kloosterman_all(ctx)[1:])
    sym = sum(g**i * h ** (n - i) for i in range(n + 1))
    w = _weights(ctx, twisted, with_zero=False)[1:]
    value = float(np.dot(w, sym.real))
    log.debug("sheaf_sum_float p=%d n=%d twisted=%s -> %.6f", p, n, twisted, value)
    return _rounded(value, f"T_{n} at p={p}")


def moment_float(ctx: PrimeContext, n: int, twisted: bool = True) -> float:
    """sum_a phi(a) K(a)^n, or sum_{a=0}^{p-1} K(a)^n untwisted."""
    _check_order(n)
    K = kloosterman_all(ctx)
    w = _weights(ctx, twisted, with_zero=True)
    return _rounded(float(np.dot(w, K**n)), f"S({n}) at p={ctx.p}")
