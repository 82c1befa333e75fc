# src/finite/greene.py
"""Greene's hypergeometric functions over F_p with parameters (phi, ..., phi; eps, ..., eps).

2F1 and 3F2 are evaluated from their character-sum forms with signed
integer Legendre symbols, so they are exact rationals independent of the
p-adic stack. greene_f evaluates the binomial-sum definition p-adically and
serves as the cross-route oracle for both.
"""
from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from chars.characters import Character, binomial, char_eval, legendre, legendre_table
from ring.residue import PrimeContext, mod_inverse
from ring.scaled import PPowerRational, ScaledResidue
from util.errors import BadArgument, ZeroArgument
from verify.squares import TwoSquares, two_squares

log = logging.getLogger(__name__)

SPECIAL_LAMBDAS = ("-1", "1/2", "2")


def _nonzero(ctx: PrimeContext, x: int) -> int:
    r = x % ctx.p
    if r == 0:
        raise ZeroArgument(f"hypergeometric argument {x} is 0 mod {ctx.p}")
    return r


def _phi_weights(ctx: PrimeContext) -> np.ndarray:
    """w[y] = phi(y) phi(1 - y) for y in F_p."""
    phi = legendre_table(ctx)
    ys = np.arange(ctx.p, dtype=np.int64)
    return phi[ys] * phi[(1 - ys) % ctx.p]


def f21(ctx: PrimeContext, x: int) -> PPowerRational:
    """2F1(x) = phi(-1)/p * sum_y phi(y) phi(1-y) phi(1-xy)."""
    p = ctx.p
    x = _nonzero(ctx, x)
    phi = legendre_table(ctx)
    ys = np.arange(p, dtype=np.int64)
    total = int(np.sum(_phi_weights(ctx) * phi[(1 - x * ys) % p]))
    return PPowerRational(legendre(ctx, -1) * total, 1, p)


def f32(ctx: PrimeContext, x: int) -> PPowerRational:
    """3F2(x) = 1/p^2 * sum_{y,z} phi(y) phi(1-y) phi(z) phi(1-z) phi(1-xyz)."""
    p = ctx.p
    x = _nonzero(ctx, x)
    phi = legendre_table(ctx)
    w = _phi_weights(ctx)
    zs = np.arange(p, dtype=np.int64)
    total = 0
    for y in range(1, p):
        wy = int(w[y])
        if wy == 0:
            continue
        inner = w * phi[(1 - (x * y % p) * zs) % p]
        total += wy * int(inner.sum())
    return PPowerRational(total, 2, p)


def greene_f(ctx: PrimeContext, n: int, x: int) -> ScaledResidue:
    """_{n+1}F_n(x) = p/(p-1) * sum_chi (phi chi choose chi)^(n+1) chi(x).

    Every binomial has valuation >= -1, so the sum is known to about
    N - n digits past its valuation; a larger N buys more.
    """
    if not 1 <= n <= 4:
        raise BadArgument(f"order n={n} outside 1..4")
    p = ctx.p
    x = _nonzero(ctx, x)
    phi = Character.quadratic(p)
    total = ScaledResidue.zero(p, ctx.N)
    for k in range(p - 1):
        chi = Character(k, p)
        b = binomial(ctx, phi * chi, chi)
        total = total + b ** (n + 1) * ScaledResidue.from_residue(ctx, char_eval(ctx, chi, x))
    scale = ScaledResidue.from_residue(ctx, p * mod_inverse(ctx, p - 1))
    return total * scale


def f43_at_one(ctx: PrimeContext) -> int:
    """p^3 * 4F3(1) as an exact integer.

    The value is bounded by 2p^(3/2) + p, which N >= 3 always resolves.
    """
    p = ctx.p
    if ctx.N < 3:
        raise BadArgument(f"f43_at_one needs N >= 3, got N={ctx.N}")
    bound = p + math.isqrt(4 * p**3)
    value = greene_f(ctx, 3, 1).shift(3)
    return value.lift_integer(bound)


class SpecialValue(NamedTuple):
    x: int
    y: int
    sign: int


def _sign_rule(sq: TwoSquares) -> int:
    return (-1) ** ((sq.x + sq.y + 1) // 2)


def special_value_convention(ctx: PrimeContext) -> SpecialValue:
    """(x, y, sign) with 2F1(1/2) = sign * 2x / p for p = 1 mod 4.

    sign = (-1)^((x+y+1)/2) * phi(2); at lambda = -1 and 2 the phi(2)
    factor is absent.
    """
    sq = two_squares(ctx.p)
    sign = _sign_rule(sq) * legendre(ctx, 2)
    log.debug("p=%d: x=%d y=%d, 2F1(1/2) sign %+d", ctx.p, sq.x, sq.y, sign)
    return SpecialValue(sq.x, sq.y, sign)


def special_lambda(ctx: PrimeContext, lam: str) -> int:
    """The field element for lam in ('-1', '1/2', '2')."""
    frac_lam = Fraction(lam)
    return frac_lam.numerator * mod_inverse(ctx, frac_lam.denominator) % ctx.p


def f21_special_value(ctx: PrimeContext, lam: str) -> PPowerRational:
    """Closed form of 2F1(lam) for lam in {-1, 1/2, 2}: 0, or sign * 2x/p for p = 1 mod 4."""
    if lam not in SPECIAL_LAMBDAS:
        raise BadArgument(f"lambda={lam} not in {SPECIAL_LAMBDAS}")
    p = ctx.p
    if p % 4 == 3:
        return PPowerRational(0, 0, p)
    sv = special_value_convention(ctx)
    sign = sv.sign if lam == "1/2" else _sign_rule(TwoSquares(sv.x, sv.y))
    return PPowerRational(sign * 2 * sv.x, 1, p)


def f32_special_value(ctx: PrimeContext) -> PPowerRational:
    """3F2(1): 0 for p = 3 mod 4, else (4x^2 - 2p)/p^2."""
    p = ctx.p
    if p % 4 == 3:
        return PPowerRational(0, 0, p)
    x = two_squares(p).x
    return PPowerRational(4 * x * x - 2 * p, 2, p)


def evans_greene_check(ctx: PrimeContext, t: int) -> bool:
    """3F2(1/(1-t^2)) = phi(t^2-1) (-1/p + 2F1((1-t)/2)^2)."""
    p = ctx.p
    t %= p
    if t in (0, 1, p - 1):
        raise BadArgument(f"t={t} must not be 0 or +-1 mod {p}")
    lhs = f32(ctx, mod_inverse(ctx, 1 - t * t) % p)
    half = (1 - t) * mod_inverse(ctx, 2) % p
    inner = PPowerRational(-1, 1, p) + f21(ctx, half) ** 2
    rhs = inner * legendre(ctx, t * t - 1)
    return lhs == rhs
