# src/padic/gamma.py
"""Morita's p-adic Gamma function, table driven.

Gamma_p(k) for 0 <= k < p^N is built in one sweep from
Gamma_p(0) = 1 and Gamma_p(k+1) = -k Gamma_p(k) (p not dividing k) or
-Gamma_p(k) (p dividing k). A rational argument x with p not dividing its
denominator is read at the index x mod p^N, which is exact mod p^N by
continuity.
"""
from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ring.residue import PrimeContext, mod_inverse, mod_pow, teichmuller
from util.errors import BadArgument, BadDenominator, TableBudgetExceeded

log = logging.getLogger(__name__)

DEFAULT_GAMMA_ENTRIES = 2**27
BYTES_PER_ENTRY = 8


@dataclass(frozen=True)
class RationalArg:
    """Reduced fraction num/den with den > 0."""

    num: int
    den: int = 1

    def __post_init__(self) -> None:
        if self.den == 0:
            raise BadArgument("zero denominator")
        g = math.gcd(self.num, self.den)
        sign = -1 if self.den < 0 else 1
        object.__setattr__(self, "num", sign * self.num // g)
        object.__setattr__(self, "den", sign * self.den // g)

    @classmethod
    def of(cls, x: "RationalArg | Fraction | int") -> "RationalArg":
        if isinstance(x, RationalArg):
            return x
        q = Fraction(x)
        return cls(q.numerator, q.denominator)

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def floor(self) -> int:
        return self.num // self.den

    def frac(self) -> "RationalArg":
        """Fractional part in [0, 1)."""
        return RationalArg(self.num % self.den, self.den)

    def __add__(self, other: "RationalArg | Fraction | int") -> "RationalArg":
        return RationalArg.of(self.to_fraction() + RationalArg.of(other).to_fraction())

    __radd__ = __add__

    def __neg__(self) -> "RationalArg":
        return RationalArg(-self.num, self.den)

    def __sub__(self, other: "RationalArg | Fraction | int") -> "RationalArg":
        return self + (-RationalArg.of(other))

    def __rsub__(self, other: "RationalArg | Fraction | int") -> "RationalArg":
        return RationalArg.of(other) - self

    def __str__(self) -> str:
        return str(self.num) if self.den == 1 else f"{self.num}/{self.den}"


def frac(x: "RationalArg | Fraction | int") -> Fraction:
    """<x> as a Fraction."""
    q = Fraction(x) if not isinstance(x, RationalArg) else x.to_fraction()
    return q - math.floor(q)


def resolve_gamma_budget(budget_bytes: int | None = None) -> int:
    """Table budget in entries: explicit bytes, else NSLAB_GAMMA_BUDGET, else default."""
    if budget_bytes is None:
        env = os.environ.get("NSLAB_GAMMA_BUDGET")
        if env is None:
            return DEFAULT_GAMMA_ENTRIES
        budget_bytes = int(env)
    if budget_bytes <= 0:
        raise BadArgument(f"gamma budget must be positive, got {budget_bytes}")
    return budget_bytes // BYTES_PER_ENTRY


@lru_cache(maxsize=4)
def _table(p: int, N: int) -> np.ndarray:
    m = p**N
    out = np.empty(m, dtype=np.int64)
    g = 1
    for k in range(m):
        out[k] = g
        g = (-g * k if k % p else -g) % m
    out.flags.writeable = False
    log.debug("gamma table p=%d N=%d (%d entries)", p, N, m)
    return out


def gamma_table(ctx: PrimeContext, budget: int | None = None) -> np.ndarray:
    """Gamma_p(k) mod p^N for 0 <= k < p^N; budget counts entries."""
    limit = DEFAULT_GAMMA_ENTRIES if budget is None else budget
    if ctx.modulus > limit:
        raise TableBudgetExceeded(
            f"Gamma table for {ctx.p}^{ctx.N} needs {ctx.modulus} entries, budget is {limit}"
        )
    return _table(ctx.p, ctx.N)


def attach_gamma(ctx: PrimeContext, budget: int | None = None) -> PrimeContext:
    """Return a copy of ctx carrying its Gamma table. budget is in bytes."""
    if ctx.gamma is not None:
        return ctx
    return ctx.with_gamma(gamma_table(ctx, resolve_gamma_budget(budget)))


def gamma_int_direct(k: int, p: int, N: int) -> int:
    """(-1)^k * prod of 0 < j < k with p not dividing j, mod p^N."""
    m = p**N
    acc = 1
    for j in range(1, k):
        if j % p:
            acc = acc * j % m
    return (-acc if k % 2 else acc) % m


def gamma_at(ctx: PrimeContext, x: "RationalArg | Fraction | int") -> int:
    if ctx.gamma is None:
        raise BadArgument("context has no Gamma table; build it with with_gamma=True")
    x = RationalArg.of(x)
    if x.den % ctx.p == 0:
        raise BadDenominator(f"{x} has p={ctx.p} in its denominator")
    r = x.num * mod_inverse(ctx, x.den) % ctx.modulus
    return int(ctx.gamma[r])


def gamma_product(ctx: PrimeContext, upper, lower=()) -> int:
    """prod Gamma_p(upper) / prod Gamma_p(lower) mod p^N."""
    m = ctx.modulus
    num = 1
    for x in upper:
        num = num * gamma_at(ctx, x) % m
    den = 1
    for x in lower:
        den = den * gamma_at(ctx, x) % m
    return num * mod_inverse(ctx, den) % m


def a0(ctx: PrimeContext, x: "RationalArg | Fraction | int") -> int:
    """The representative of x mod p in {1, ..., p}."""
    x = RationalArg.of(x)
    if x.den % ctx.p == 0:
        raise BadDenominator(f"{x} has p={ctx.p} in its denominator")
    r = x.num * pow(x.den, -1, ctx.p) % ctx.p
    return r or ctx.p


def reflection_check(ctx: PrimeContext, x: "RationalArg | Fraction | int") -> bool:
    """Gamma_p(x) Gamma_p(1 - x) = (-1)^a0(x)."""
    x = RationalArg.of(x)
    lhs = gamma_at(ctx, x) * gamma_at(ctx, 1 - x) % ctx.modulus
    rhs = (-1) ** a0(ctx, x) % ctx.modulus
    return lhs == rhs


def multiplication_check(ctx: PrimeContext, m: int, x: "RationalArg | Fraction | int") -> bool:
    """prod_h Gamma_p((x+h)/m) = omega^((1-p)(1-x))(m) Gamma_p(x) prod_{h>0} Gamma_p(h/m).

    x must be r/(p-1) with 0 <= r <= p-1; the character factor is then omega(m)^r.
    """
    p, M = ctx.p, ctx.modulus
    if m <= 0 or m % p == 0:
        raise BadArgument(f"m={m} must be positive and prime to p={p}")
    q = Fraction(RationalArg.of(x).to_fraction())
    r = q * (p - 1)
    if r.denominator != 1 or not 0 <= r <= p - 1:
        raise BadArgument(f"x={q} is not r/(p-1) with 0 <= r <= p-1")
    lhs = 1
    for h in range(m):
        lhs = lhs * gamma_at(ctx, (q + h) / m) % M
    rhs = mod_pow(ctx, teichmuller(ctx, m), int(r)) * gamma_at(ctx, q) % M
    for h in range(1, m):
        rhs = rhs * gamma_at(ctx, Fraction(h, m)) % M
    return lhs == rhs


def lemma41_check(ctx: PrimeContext, t: int, a: int, second: bool = False) -> bool:
    """Both product identities for Gamma_p at <h/t +- a/(p-1)>."""
    p, M = ctx.p, ctx.modulus
    if t < 1 or t % p == 0:
        raise BadArgument(f"t={t} must be positive and prime to p={p}")
    if not 0 <= a <= p - 2:
        raise BadArgument(f"a={a} outside 0..{p - 2}")
    shift = Fraction(a, p - 1)
    base = 1
    for h in range(1, t):
        base = base * gamma_at(ctx, Fraction(h, t)) % M
    w = mod_pow(ctx, teichmuller(ctx, t), t * a)
    if not second:
        lhs = w * gamma_at(ctx, frac(t * shift)) * base % M
        rhs = 1
        for h in range(t):
            rhs = rhs * gamma_at(ctx, frac(Fraction(h, t) + shift)) % M
    else:
        lhs = mod_inverse(ctx, w) * gamma_at(ctx, frac(-t * shift)) * base % M
        rhs = 1
        for h in range(1, t + 1):
            rhs = rhs * gamma_at(ctx, frac(Fraction(h, t) - shift)) % M
    return lhs == rhs


def floor_lemma_d1(d: int, a: int, p: int) -> bool:
    """floor(-da/(p-1)) = -1 + sum_{h=1}^{d} floor(h/d - a/(p-1))."""
    if d <= 0 or not 0 <= a <= p - 2:
        raise BadArgument(f"need d > 0 and 0 <= a <= p-2, got d={d}, a={a}")
    x = Fraction(a, p - 1)
    lhs = math.floor(-d * x)
    rhs = -1 + sum(math.floor(Fraction(h, d) - x) for h in range(1, d + 1))
    return lhs == rhs


def floor_lemma_d2(d: int, a: int, p: int) -> bool:
    """floor(da/(p-1)) = sum_{h=0}^{d-1} floor(<h/d> + a/(p-1))."""
    if d <= 0 or not 0 <= a <= p - 2:
        raise BadArgument(f"need d > 0 and 0 <= a <= p-2, got d={d}, a={a}")
    x = Fraction(a, p - 1)
    lhs = math.floor(d * x)
    rhs = sum(math.floor(frac(Fraction(h, d)) + x) for h in range(d))
    return lhs == rhs
