# src/padic/hypergeom.py
"""McCarthy's p-adic hypergeometric function nGn and the instances used by the checks.

    nGn[a; b | t] = -1/(p-1) sum_{a=0}^{p-2} (-1)^(an) conj(omega)^a(t)
                    prod_k (-p)^(e_k(a)) G(<a_k - a/(p-1)>)/G(<a_k>) * G(<-b_k + a/(p-1)>)/G(<-b_k>)

with e_k(a) = -floor(<a_k> - a/(p-1)) - floor(<-b_k> + a/(p-1)) and G = Gamma_p.
All floors and fractional parts are exact Fractions.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from chars.characters import Character, char_eval
from padic.gamma import RationalArg, frac, gamma_at, gamma_product
from ring.residue import PrimeContext, mod_inverse
from ring.scaled import ScaledResidue
from util.errors import BadDenominator

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GParams:
    upper: tuple[RationalArg, ...]
    lower: tuple[RationalArg, ...]
    t: int = 1
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "upper", tuple(RationalArg.of(x) for x in self.upper))
        object.__setattr__(self, "lower", tuple(RationalArg.of(x) for x in self.lower))
        if len(self.upper) != len(self.lower):
            raise ValueError(f"{len(self.upper)} upper and {len(self.lower)} lower parameters")

    @property
    def n(self) -> int:
        return len(self.upper)

    def check_prime(self, p: int) -> None:
        for x in self.upper + self.lower:
            if x.den % p == 0:
                raise BadDenominator(f"parameter {x} has p={p} in its denominator")

    def __str__(self) -> str:
        up = ", ".join(str(x) for x in self.upper)
        lo = ", ".join(str(x) for x in self.lower)
        return f"{self.n}G{self.n}[{up}; {lo} | {self.t}]"


def _f(num: int, den: int) -> Fraction:
    return Fraction(num, den)


G44_THM1 = GParams(
    upper=(_f(5, 6), _f(5, 6), _f(1, 12), _f(7, 12)),
    lower=(_f(1, 3),) * 4,
    name="g44",
)
G1212_THM2 = GParams(
    upper=(0, _f(1, 3), _f(2, 3)) * 4,
    lower=(
        _f(1, 6), _f(1, 2), _f(5, 6), _f(1, 12), _f(1, 6), _f(1, 4),
        _f(5, 12), _f(1, 2), _f(7, 12), _f(3, 4), _f(5, 6), _f(11, 12),
    ),
    name="g1212",
)
G44_INTRO = GParams(upper=(_f(1, 2),) * 4, lower=(0,) * 4, name="g44_intro")
G44_QUARTER = GParams(
    upper=(_f(1, 2), _f(1, 2), _f(1, 4), _f(3, 4)), lower=(1,) * 4, name="g44_quarter"
)


def g_exponents(params: GParams, p: int) -> list[int]:
    """Total (-p) exponent of every summand, a = 0..p-2."""
    params.check_prime(p)
    q = p - 1
    ups = [frac(x) for x in params.upper]
    lows = [frac(-x) for x in params.lower]
    out = []
    for a in range(q):
        s = Fraction(a, q)
        e = 0
        for ak in ups:
            e -= math.floor(ak - s)
        for bk in lows:
            e -= math.floor(bk + s)
        out.append(e)
    return out


def g_function(ctx: PrimeContext, params: GParams) -> ScaledResidue:
    """nGn[params] mod p^N; the result may have negative valuation."""
    p, m = ctx.p, ctx.modulus
    q = p - 1
    params.check_prime(p)
    ups = [frac(x) for x in params.upper]
    lows = [frac(-x) for x in params.lower]
    base = gamma_product(ctx, ups + lows)
    base_inv = mod_inverse(ctx, base)
    t_char = Character.omega(p).conj
    exps = g_exponents(params, p)

    total = ScaledResidue.zero(p, ctx.N + min(exps))
    for a in range(q):
        s = Fraction(a, q)
        unit = gamma_product(ctx, [frac(ak - s) for ak in ups] + [frac(bk + s) for bk in lows])
        unit = unit * base_inv % m
        unit = unit * char_eval(ctx, t_char**a, params.t) % m
        e = exps[a]
        if (a * params.n + e) % 2:
            unit = -unit % m
        total = total + ScaledResidue.from_residue(ctx, unit).shift(e)
    scale = ScaledResidue.from_residue(ctx, -mod_inverse(ctx, q))
    value = total * scale
    log.debug("%s at p=%d N=%d -> %s", params, p, ctx.N, value)
    return value


def g44_thm1(ctx: PrimeContext) -> ScaledResidue:
    return g_function(ctx, G44_THM1)


def g1212_thm2(ctx: PrimeContext) -> ScaledResidue:
    return g_function(ctx, G1212_THM2)


def g44_intro(ctx: PrimeContext) -> ScaledResidue:
    """4G4[1/2 x4; 0 x4 | 1], equal to p - T_{4,phi}/p."""
    return g_function(ctx, G44_INTRO)


def g44_quarter(ctx: PrimeContext) -> ScaledResidue:
    """4G4[1/2, 1/2, 1/4, 3/4; 1, 1, 1, 1 | 1]."""
    return g_function(ctx, G44_QUARTER)


def c_constant(ctx: PrimeContext) -> int:
    """Gamma_p(2/3)^4 Gamma_p(5/6)^2 Gamma_p(1/12) Gamma_p(7/12) / Gamma_p(1/2)."""
    return gamma_product(
        ctx,
        [_f(2, 3)] * 4 + [_f(5, 6)] * 2 + [_f(1, 12), _f(7, 12)],
        [_f(1, 2)],
    )


def c_prime_constant(ctx: PrimeContext) -> int:
    """C * Gamma_p(1/2), the form in which the constant enters the identities."""
    return c_constant(ctx) * gamma_at(ctx, _f(1, 2)) % ctx.modulus


def fm_constant(ctx: PrimeContext) -> int:
    """s(p) = Gamma_p(1/2)^2 Gamma_p(1/4) Gamma_p(3/4)."""
    return gamma_product(ctx, [_f(1, 2), _f(1, 2), _f(1, 4), _f(3, 4)])


def character_prefactor(ctx: PrimeContext) -> int:
    """conj(psi6)(2) psi3(4); needs p = 1 mod 6."""
    p = ctx.p
    return (
        char_eval(ctx, Character.psi6(p).conj, 2) * char_eval(ctx, Character.psi3(p), 4)
    ) % ctx.modulus
