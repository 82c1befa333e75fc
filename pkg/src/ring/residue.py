# src/ring/residue.py
"""Exact arithmetic in Z/p^N plus the per-prime lookup tables.

Residues are plain Python ints in [0, p^N). Tables are numpy int64 arrays;
their entries are always converted back to int before any modular product,
since p^N may be close to 2^63.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np
from sympy import isprime, n_order, primitive_root as _sympy_primitive_root

from util.errors import (
    BadArgument,
    NotInvertible,
    NotPrime,
    PrecisionOverflow,
    ZeroArgument,
)

log = logging.getLogger(__name__)

MAX_MODULUS = 2**63


@dataclass(frozen=True, eq=False)
class PrimeContext:
    """All precomputed state for one prime p at precision N.

    dlog[x] is the index of x in <g> for 1 <= x < p (dlog[0] = -1),
    teich[x] is the Teichmuller lift of x mod p^N (teich[0] = 0) and
    omega_pow[k] = teich[g^k], so omega^a(x) = omega_pow[a * dlog[x] mod (p-1)].
    gamma, when present, holds Gamma_p(k) mod p^N for 0 <= k < p^N.
    """

    p: int
    N: int
    modulus: int
    g: int
    dlog: np.ndarray
    teich: np.ndarray
    omega_pow: np.ndarray
    gamma: np.ndarray | None = None

    @property
    def order(self) -> int:
        """Order p - 1 of the character group."""
        return self.p - 1

    def with_gamma(self, table: np.ndarray) -> "PrimeContext":
        return replace(self, gamma=table)

    def __repr__(self) -> str:
        has_gamma = self.gamma is not None
        return f"PrimeContext(p={self.p}, N={self.N}, g={self.g}, gamma={has_gamma})"


def max_precision(p: int, cap: int = MAX_MODULUS) -> int:
    """Largest N with p^N < cap."""
    if p < 2:
        raise BadArgument(f"p={p} must be at least 2")
    n, power = 0, 1
    while power * p < cap:
        power *= p
        n += 1
    return n


def primitive_root(p: int) -> int:
    """Smallest primitive root of F_p (trial over 2, 3, 4, ...)."""
    g = int(_sympy_primitive_root(p))
    if n_order(g, p) != p - 1:
        raise NotPrime(f"p={p} has no primitive root of order p-1")
    return g


def teichmuller_lift(x: int, p: int, N: int) -> int:
    """Lift x mod p to the (p-1)-th root of unity mod p^N by N-1 p-th powerings."""
    m = p**N
    y = x % p
    if y == 0:
        raise ZeroArgument(f"{x} is zero mod {p}")
    for _ in range(N - 1):
        y = pow(y, p, m)
    return y


def _check_prime(p: int, N: int) -> None:
    if not isinstance(p, (int, np.integer)) or p < 3 or not isprime(int(p)):
        raise NotPrime(f"p={p} is not an odd prime")
    if N < 1:
        raise BadArgument(f"precision N={N} must be >= 1")
    if p**N >= MAX_MODULUS:
        raise PrecisionOverflow(f"p^N = {p}^{N} does not fit below 2^63")


@lru_cache(maxsize=64)
def _build_context(p: int, N: int) -> PrimeContext:
    m = p**N
    g = primitive_root(p)

    dlog = np.full(p, -1, dtype=np.int64)
    x = 1
    for k in range(p - 1):
        dlog[x] = k
        x = x * g % p

    w = teichmuller_lift(g, p, N)
    omega_pow = np.empty(p - 1, dtype=np.int64)
    y = 1
    for k in range(p - 1):
        omega_pow[k] = y
        y = y * w % m

    teich = np.zeros(p, dtype=np.int64)
    teich[1:] = omega_pow[dlog[1:]]

    for arr in (dlog, omega_pow, teich):
        arr.flags.writeable = False
    log.debug("built context p=%d N=%d g=%d", p, N, g)
    return PrimeContext(
        p=p, N=N, modulus=m, g=g, dlog=dlog, teich=teich, omega_pow=omega_pow
    )


def make_context(
    p: int, N: int = 1, with_gamma: bool = False, gamma_budget: int | None = None
) -> PrimeContext:
    """Build (or fetch from cache) the context for p at precision N.

    Raises NotPrime, PrecisionOverflow and, with with_gamma, TableBudgetExceeded.
    """
    p, N = int(p), int(N)
    _check_prime(p, N)
    ctx = _build_context(p, N)
    if with_gamma:
        from padic.gamma import attach_gamma

        ctx = attach_gamma(ctx, budget=gamma_budget)
    return ctx


def teichmuller(ctx: PrimeContext, x: int) -> int:
    r = x % ctx.p
    if r == 0:
        raise ZeroArgument(f"Teichmuller lift of {x} mod {ctx.p} is undefined")
    return int(ctx.teich[r])


def dlog_of(ctx: PrimeContext, x: int) -> int:
    r = x % ctx.p
    if r == 0:
        raise ZeroArgument(f"discrete log of {x} mod {ctx.p} is undefined")
    return int(ctx.dlog[r])


def mod_inverse(ctx: PrimeContext, x: int) -> int:
    if x % ctx.p == 0:
        raise NotInvertible(f"{x} is not a unit mod {ctx.p}^{ctx.N}")
    return pow(x, -1, ctx.modulus)


def mod_pow(ctx: PrimeContext, x: int, e: int) -> int:
    if e < 0:
        return pow(mod_inverse(ctx, x), -e, ctx.modulus)
    return pow(x % ctx.modulus, e, ctx.modulus)


def balanced_lift(ctx: PrimeContext, r: int) -> int:
    """Representative of r mod p^N in (-p^N/2, p^N/2]."""
    return balanced_mod(r, ctx.modulus)


def balanced_mod(r: int, m: int) -> int:
    r %= m
    return r - m if r > m // 2 else r


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ZeroArgument("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v
