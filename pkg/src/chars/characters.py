# src/chars/characters.py
"""Multiplicative characters of F_p^x valued in Teichmuller units of Z/p^N.

A character is stored by its exponent a mod p-1 and stands for omega^a.
Character values are read from ctx.omega_pow through the dlog table, and
every extension to 0 is 0, the trivial character included.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ring.residue import PrimeContext, make_context
from ring.scaled import ScaledResidue
from util.errors import BadArgument, ZeroArgument


@dataclass(frozen=True)
class Character:
    exponent: int
    p: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "exponent", self.exponent % (self.p - 1))

    @classmethod
    def trivial(cls, p: int) -> "Character":
        return cls(0, p)

    @classmethod
    def omega(cls, p: int, a: int = 1) -> "Character":
        return cls(a, p)

    @classmethod
    def quadratic(cls, p: int) -> "Character":
        return cls((p - 1) // 2, p)

    @classmethod
    def of_order(cls, p: int, k: int) -> "Character":
        """omega^((p-1)/k); needs k | p-1."""
        if (p - 1) % k:
            raise BadArgument(f"no character of order {k} mod {p}")
        return cls((p - 1) // k, p)

    @classmethod
    def psi3(cls, p: int) -> "Character":
        return cls.of_order(p, 3)

    @classmethod
    def psi6(cls, p: int) -> "Character":
        return cls.of_order(p, 6)

    @property
    def is_trivial(self) -> bool:
        return self.exponent == 0

    @property
    def conj(self) -> "Character":
        return Character(-self.exponent, self.p)

    def __mul__(self, other: "Character") -> "Character":
        if other.p != self.p:
            raise BadArgument(f"characters mod {self.p} and mod {other.p}")
        return Character(self.exponent + other.exponent, self.p)

    def __pow__(self, k: int) -> "Character":
        return Character(self.exponent * k, self.p)

    def __str__(self) -> str:
        q = self.p - 1
        if self.exponent == 0:
            return "eps"
        if 2 * self.exponent == q:
            return "phi"
        return f"omega^{self.exponent}"


def _same_prime(ctx: PrimeContext, *chars: Character) -> None:
    for c in chars:
        if c.p != ctx.p:
            raise BadArgument(f"character mod {c.p} used with p={ctx.p}")


def char_eval(ctx: PrimeContext, A: Character, x: int) -> int:
    """A(x) mod p^N, with A(0) = 0."""
    _same_prime(ctx, A)
    r = x % ctx.p
    if r == 0:
        return 0
    return int(ctx.omega_pow[A.exponent * int(ctx.dlog[r]) % (ctx.p - 1)])


def delta(A: Character) -> int:
    return 1 if A.is_trivial else 0


def legendre(ctx: PrimeContext, x: int) -> int:
    """phi(x) as -1, 0 or +1."""
    r = x % ctx.p
    if r == 0:
        return 0
    return 1 if ctx.dlog[r] % 2 == 0 else -1


@lru_cache(maxsize=64)
def _legendre_table(p: int) -> np.ndarray:
    ctx = make_context(p, 1)
    table = np.where(ctx.dlog % 2 == 0, 1, -1).astype(np.int64)
    table[0] = 0
    table.flags.writeable = False
    return table


def legendre_table(ctx: PrimeContext) -> np.ndarray:
    """phi(x) for x = 0..p-1 as an int64 array."""
    return _legendre_table(ctx.p)


def omega_sum(ctx: PrimeContext, exponents: np.ndarray, weights: np.ndarray | None = None) -> int:
    """sum_i weights[i] * omega^(exponents[i]) mod p^N.

    Exponents are bucketed mod p-1 first, so the modular products only run
    over p-1 Python ints.
    """
    q = ctx.p - 1
    e = np.asarray(exponents, dtype=np.int64) % q
    if weights is None:
        counts = np.bincount(e, minlength=q)
    else:
        counts = np.zeros(q, dtype=np.int64)
        np.add.at(counts, e, np.asarray(weights, dtype=np.int64))
    total = np.dot(counts.astype(object), ctx.omega_pow.astype(object))
    return int(total) % ctx.modulus


def _pair_exponents(ctx: PrimeContext, A: Character, B: Character, xs: np.ndarray, shift: int):
    """Exponents of A(x) B(shift - x) over xs, dropping terms that vanish."""
    p = ctx.p
    ys = (shift - xs) % p
    keep = (xs % p != 0) & (ys != 0)
    xs, ys = xs[keep], ys[keep]
    return A.exponent * ctx.dlog[xs % p] + B.exponent * ctx.dlog[ys]


def jacobi_sum(ctx: PrimeContext, A: Character, B: Character) -> int:
    """J(A, B) = sum_x A(x) B(1 - x) mod p^N."""
    _same_prime(ctx, A, B)
    xs = np.arange(2, ctx.p, dtype=np.int64)
    return omega_sum(ctx, _pair_exponents(ctx, A, B, xs, 1))


def jacobi_sum_direct(ctx: PrimeContext, A: Character, B: Character) -> int:
    """Unvectorised J(A, B), kept as an oracle."""
    m = ctx.modulus
    return sum(char_eval(ctx, A, x) * char_eval(ctx, B, 1 - x) for x in range(ctx.p)) % m


def jacobi_sum_generalized(ctx: PrimeContext, A: Character, B: Character, a: int) -> int:
    """J_a(A, B) = sum_{t1 + t2 = a} A(t1) B(t2)."""
    _same_prime(ctx, A, B)
    if a % ctx.p == 0:
        raise ZeroArgument("generalized Jacobi sum needs a != 0")
    xs = np.arange(1, ctx.p, dtype=np.int64)
    return omega_sum(ctx, _pair_exponents(ctx, A, B, xs, a % ctx.p))


def binomial(ctx: PrimeContext, A: Character, B: Character) -> ScaledResidue:
    """(A choose B) = B(-1) J(A, conj B) / p."""
    value = char_eval(ctx, B, -1) * jacobi_sum(ctx, A, B.conj)
    return ScaledResidue.from_residue(ctx, value).shift(-1)


def character_sum(ctx: PrimeContext, A: Character) -> int:
    """sum_x A(x) over F_p."""
    xs = np.arange(1, ctx.p, dtype=np.int64)
    return omega_sum(ctx, A.exponent * ctx.dlog[xs])


def orthogonality_check(ctx: PrimeContext, A: Character) -> bool:
    """sum_x A(x) is p-1 for A trivial and 0 otherwise."""
    return character_sum(ctx, A) == (ctx.p - 1) * delta(A) % ctx.modulus


def dual_orthogonality_check(ctx: PrimeContext, x: int) -> bool:
    """sum_A A(x) is p-1 at x = 1 and 0 elsewhere."""
    q = ctx.p - 1
    r = x % ctx.p
    if r == 0:
        return True
    exps = np.arange(q, dtype=np.int64) * int(ctx.dlog[r])
    want = q if r == 1 else 0
    return omega_sum(ctx, exps) == want
