# src/chars/gauss.py
"""Balanced products of Gauss sums, evaluated p-adically.

g(omega^e) is represented by its exponent e. Under Gross-Koblitz it is
-pi^s Gamma_p(s/(p-1)) with s = (-e) mod (p-1), and pi^(p-1) = -p, so a
product whose s-total is a multiple of p-1 lies in Q_p. Two evaluation
routes are provided: rewriting into Jacobi sums, and Gamma_p values.
"""
from __future__ import annotations

import logging
import math
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from chars.characters import Character, char_eval, jacobi_sum
from padic.gamma import frac, gamma_at, gamma_product
from ring.residue import PrimeContext, mod_inverse, mod_pow, teichmuller
from ring.scaled import ScaledResidue
from util.errors import BadArgument, NotBalanced, ReductionStuck

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GaussProductSpec:
    """prod g(num) / prod g(den) * scalar, scalar a residue mod p^N."""

    p: int
    numerator: tuple[int, ...]
    denominator: tuple[int, ...] = ()
    scalar: int = 1

    @classmethod
    def of(cls, p: int, num, den=(), scalar: int = 1) -> "GaussProductSpec":
        q = p - 1

        def exps(chars) -> tuple[int, ...]:
            return tuple(sorted((c.exponent if isinstance(c, Character) else c) % q for c in chars))

        return cls(p, exps(num), exps(den), scalar)

    def pi_exponents(self) -> tuple[list[int], list[int]]:
        q = self.p - 1
        return [(-e) % q for e in self.numerator], [(-e) % q for e in self.denominator]

    @property
    def pi_exponent(self) -> int:
        s_num, s_den = self.pi_exponents()
        return sum(s_num) - sum(s_den)

    @property
    def is_balanced(self) -> bool:
        return self.pi_exponent % (self.p - 1) == 0

    @property
    def valuation(self) -> int:
        """Exact p-adic valuation of the Gauss-sum part."""
        if not self.is_balanced:
            raise NotBalanced(f"{self} is not balanced")
        return self.pi_exponent // (self.p - 1)

    def __mul__(self, other: "GaussProductSpec") -> "GaussProductSpec":
        return GaussProductSpec(
            self.p,
            tuple(sorted(self.numerator + other.numerator)),
            tuple(sorted(self.denominator + other.denominator)),
            self.scalar * other.scalar,
        )

    def inverse(self) -> "GaussProductSpec":
        return GaussProductSpec(self.p, self.denominator, self.numerator, self.scalar)


class _Reducer:
    """Mutable state of one Jacobi-sum rewrite run."""

    def __init__(self, ctx: PrimeContext, spec: GaussProductSpec, rng: random.Random | None):
        self.ctx = ctx
        self.q = ctx.p - 1
        self.num = Counter(spec.numerator)
        self.den = Counter(spec.denominator)
        self.coeff = ScaledResidue.from_residue(ctx, spec.scalar)
        self.rng = rng

    def _scale(self, value: ScaledResidue | int, invert: bool) -> None:
        if isinstance(value, int):
            value = ScaledResidue.from_residue(self.ctx, value)
        self.coeff = self.coeff * (value.inverse() if invert else value)

    def moves(self) -> list[tuple]:
        out: list[tuple] = []
        for e in self.num:
            if self.den[e]:
                out.append(("cancel", e))
        for side, bag in (("num", self.num), ("den", self.den)):
            if bag[0]:
                out.append(("trivial", side))
            keys = sorted(e for e in bag if bag[e] and e)
            for i, e1 in enumerate(keys):
                for e2 in keys[i:]:
                    if e1 == e2 and bag[e1] < 2:
                        continue
                    if (e1 + e2) % self.q == 0:
                        out.append(("conj", side, e1, e2))
                    else:
                        out.append(("contract", side, e1, e2))
        return out

    def apply(self, move: tuple) -> None:
        ctx, kind = self.ctx, move[0]
        if kind == "cancel":
            e = move[1]
            self.num[e] -= 1
            self.den[e] -= 1
        elif kind == "trivial":
            bag = self.num if move[1] == "num" else self.den
            bag[0] -= 1
            self._scale(ctx.modulus - 1, invert=False)
        else:
            side, e1, e2 = move[1:]
            bag = self.num if side == "num" else self.den
            bag[e1] -= 1
            bag[e2] -= 1
            if kind == "conj":
                # g(chi) g(conj chi) = p chi(-1)
                sign = char_eval(ctx, Character(e1, ctx.p), -1)
                value = ScaledResidue.from_int(ctx, ctx.p) * ScaledResidue.from_residue(ctx, sign)
            else:
                # g(A) g(B) = J(A, B) g(AB)
                j = jacobi_sum(ctx, Character(e1, ctx.p), Character(e2, ctx.p))
                value = ScaledResidue.from_residue(ctx, j)
                bag[(e1 + e2) % self.q] += 1
            self._scale(value, invert=(side == "den"))
        self.num = +self.num
        self.den = +self.den

    def run(self) -> ScaledResidue:
        while True:
            moves = self.moves()
            if not moves:
                break
            move = self.rng.choice(moves) if self.rng is not None else moves[0]
            self.apply(move)
        if self.num or self.den:
            raise ReductionStuck(
                f"left with g{sorted(self.num.elements())} / g{sorted(self.den.elements())}"
            )
        return self.coeff


def reduce_gauss_product(
    ctx: PrimeContext, spec: GaussProductSpec, rng: random.Random | None = None
) -> ScaledResidue:
    """Rewrite a balanced spec into Jacobi sums until no Gauss sum is left.

    Rules: identical factors across the bar cancel; g(eps) = -1;
    g(chi) g(conj chi) = p chi(-1); g(A) g(B) = J(A, B) g(AB) when A, B and
    AB are nontrivial. With rng, each step picks a random legal rule.
    """
    if spec.p != ctx.p:
        raise BadArgument(f"spec for p={spec.p} used with p={ctx.p}")
    if not spec.is_balanced:
        raise NotBalanced(f"pi-exponent total {spec.pi_exponent} is not a multiple of {ctx.p - 1}")
    return _Reducer(ctx, spec, rng).run()


def gauss_product_gamma(ctx: PrimeContext, spec: GaussProductSpec) -> ScaledResidue:
    """Gross-Koblitz evaluation of a balanced spec."""
    if not spec.is_balanced:
        raise NotBalanced(f"pi-exponent total {spec.pi_exponent} is not a multiple of {ctx.p - 1}")
    q = ctx.p - 1
    s_num, s_den = spec.pi_exponents()
    unit = gamma_product(
        ctx, [Fraction(s, q) for s in s_num], [Fraction(s, q) for s in s_den]
    )
    sign = (-1) ** ((len(s_num) - len(s_den)) % 2)
    S = spec.pi_exponent // q
    unit = unit * sign * spec.scalar % ctx.modulus
    # pi^(q S) = (-p)^S
    return ScaledResidue.from_residue(ctx, unit * (-1) ** (S % 2)).shift(S)


def kloosterman_term_spec(ctx: PrimeContext, a: int) -> GaussProductSpec:
    """g(phi w^a)^2 g(w^-a)^4 g(phi w^2a) / g(phi) * w^-a(4)."""
    p, h = ctx.p, (ctx.p - 1) // 2
    twist = mod_inverse(ctx, mod_pow(ctx, teichmuller(ctx, 4), a))
    return GaussProductSpec.of(
        p,
        [h + a, h + a, -a, -a, -a, -a, h + 2 * a],
        [h],
        scalar=twist,
    )


def kloosterman_term(ctx: PrimeContext, a: int) -> ScaledResidue:
    """One summand of B' (or D) by the fixed Jacobi schedule."""
    p, q = ctx.p, ctx.p - 1
    a %= q
    phi = Character.quadratic(p)
    w = Character.omega(p)
    P = ScaledResidue.from_int(ctx, p)
    phi_m1 = ScaledResidue.from_residue(ctx, char_eval(ctx, phi, -1))
    if a == 0:
        return P * phi_m1
    if 2 * a == q:
        return P * P
    c = w ** (-a)
    c4 = ScaledResidue.from_residue(ctx, char_eval(ctx, c, 4))
    if 4 * a % q == 0:
        j = ScaledResidue.from_residue(ctx, jacobi_sum(ctx, c, c))
        return -(P * phi_m1 * j**3 * c4)
    j1 = jacobi_sum(ctx, phi * w**a, phi * w**a)
    j2 = jacobi_sum(ctx, c, c)
    j3 = jacobi_sum(ctx, phi * w ** (2 * a), w ** (-2 * a))
    value = j1 * j2 * j2 % ctx.modulus * j3 % ctx.modulus
    return P * ScaledResidue.from_residue(ctx, value) * c4


def kloosterman_gauss_sum(ctx: PrimeContext) -> ScaledResidue:
    """B' (p = 1 mod 3) or D (otherwise), by Jacobi sums.

    Every summand is a p-adic integer, so the sum is accumulated as a
    residue mod p^N.
    """
    if ctx.p < 5:
        raise BadArgument(f"needs p >= 5, got {ctx.p}")
    m = ctx.modulus
    total = 0
    for a in range(ctx.p - 1):
        total = (total + kloosterman_term(ctx, a).residue(ctx.N)) % m
    log.debug("kloosterman_gauss_sum p=%d N=%d -> %d", ctx.p, ctx.N, total)
    return ScaledResidue.from_residue(ctx, total)


def _proof_term_one_mod_three(ctx: PrimeContext, a: int, scale: int) -> int:
    """Summand after a -> a - (p-1)/3 and duplication; without the constant factor."""
    p = ctx.p
    x = Fraction(a, p - 1)
    S = (
        4
        - 2 * math.floor(Fraction(5, 6) - x)
        - math.floor(Fraction(1, 12) - x)
        - math.floor(Fraction(7, 12) - x)
        - 4 * math.floor(Fraction(2, 3) + x)
    )
    if S < 0:
        raise BadArgument(f"negative (-p) exponent {S} at a={a}")
    gam = gamma_product(
        ctx,
        [frac(Fraction(5, 6) - x)] * 2
        + [frac(Fraction(2, 3) + x)] * 4
        + [frac(Fraction(1, 12) - x), frac(Fraction(7, 12) - x)],
    )
    return gam * pow(-p, S, scale) % scale


def _proof_term_other(ctx: PrimeContext, a: int, scale: int) -> int:
    """Summand after a -> 3a with Gamma_p at multiples of a/(p-1)."""
    p = ctx.p
    x = Fraction(a, p - 1)
    T = (
        -4 * math.floor(3 * x)
        - math.floor(-6 * x)
        - math.floor(-12 * x)
        + 2 * math.floor(-3 * x)
    )
    if T < 0:
        raise BadArgument(f"negative (-p) exponent {T} at a={a}")
    gam = gamma_product(
        ctx,
        [frac(3 * x)] * 4 + [frac(-6 * x), frac(-12 * x)],
        [frac(-3 * x)] * 2,
    )
    twist = mod_inverse(ctx, mod_pow(ctx, teichmuller(ctx, 2), 30 * a))
    return gam * twist * pow(-p, T, scale) % scale


def kloosterman_gauss_sum_gamma(ctx: PrimeContext, form: str = "proof") -> ScaledResidue:
    """The same sum through Gamma_p.

    form="direct" applies Gross-Koblitz to every summand as it stands.
    form="proof" follows the reduction used to reach the G-functions: for
    p = 1 mod 3 the shift a -> a - (p-1)/3 and the duplication formula,
    otherwise a -> 3a and two Davenport-Hasse steps. Both need the Gamma
    table at precision N.
    """
    if ctx.p < 5:
        raise BadArgument(f"needs p >= 5, got {ctx.p}")
    p, m = ctx.p, ctx.modulus
    if form == "direct":
        total = ScaledResidue.zero(p, ctx.N)
        for a in range(p - 1):
            total = total + gauss_product_gamma(ctx, kloosterman_term_spec(ctx, a))
        return total
    if form != "proof":
        raise BadArgument(f"unknown form {form!r}")

    phi = Character.quadratic(p)
    phi_m1 = char_eval(ctx, phi, -1)
    half = gamma_at(ctx, Fraction(1, 2))
    if (p - 1) % 3 == 0:
        psi3_4 = char_eval(ctx, Character.psi3(p), 4)
        psi6_2 = char_eval(ctx, Character.psi6(p).conj, 2)
        total = sum(_proof_term_one_mod_three(ctx, a, m) for a in range(p - 1)) % m
        const = psi3_4 * psi6_2 * mod_inverse(ctx, half * half) % m
        return ScaledResidue.from_residue(ctx, total * const)
    total = sum(_proof_term_other(ctx, a, m) for a in range(p - 1)) % m
    return ScaledResidue.from_int(ctx, p) * ScaledResidue.from_residue(ctx, total * phi_m1)


def davenport_hasse_check(ctx: PrimeContext, m: int, psi: Character) -> bool:
    """prod_{chi^m = eps} g(chi psi) = -g(psi^m) psi(m^-m) prod_{chi^m = eps} g(chi)."""
    p, q = ctx.p, ctx.p - 1
    if m not in (2, 3, 4, 6):
        raise BadArgument(f"m={m} not in (2, 3, 4, 6)")
    if q % m:
        raise BadArgument(f"m={m} does not divide p-1={q}")
    roots = [k * (q // m) for k in range(m)]
    lhs = [r + psi.exponent for r in roots]
    rhs = [m * psi.exponent] + roots
    # 1 / (-psi(m^-m)) = -psi(m^m)
    scalar = -char_eval(ctx, psi, pow(m, m, p)) % ctx.modulus
    # g(eps) = -1 covers psi^m trivial, so the balanced ratio always reduces
    value = reduce_gauss_product(ctx, GaussProductSpec.of(p, lhs, rhs, scalar=scalar))
    return value.congruent(1, min(ctx.N, value.absolute_precision))
