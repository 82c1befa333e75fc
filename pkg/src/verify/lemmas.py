# src/verify/lemmas.py
"""The supporting identities, run exhaustively at one prime.

Every entry takes a context carrying the Gamma table and returns a bool.
Entries that do not apply at p (for example Davenport-Hasse with no m
dividing p-1) pass vacuously.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Callable

from chars.characters import (
    Character,
    binomial,
    char_eval,
    dual_orthogonality_check,
    jacobi_sum,
    jacobi_sum_generalized,
    orthogonality_check,
)
from chars.gauss import davenport_hasse_check
from finite.greene import evans_greene_check
from kloosterman.moments import lemma32_check, lemma33_check
from padic.gamma import (
    floor_lemma_d1,
    floor_lemma_d2,
    lemma41_check,
    multiplication_check,
    reflection_check,
)
from ring.residue import PrimeContext

log = logging.getLogger(__name__)


def _characters(ctx: PrimeContext):
    return [Character(a, ctx.p) for a in range(ctx.p - 1)]


def orthogonality(ctx: PrimeContext) -> bool:
    return all(orthogonality_check(ctx, A) for A in _characters(ctx)) and all(
        dual_orthogonality_check(ctx, x) for x in range(ctx.p)
    )


def generalized_jacobi(ctx: PrimeContext) -> bool:
    """J_t(A, B) = AB(t) J(A, B) at t = g for every A and B = A w."""
    m, t = ctx.modulus, ctx.g
    for A in _characters(ctx):
        B = A * Character.omega(ctx.p)
        want = char_eval(ctx, A * B, t) * jacobi_sum(ctx, A, B) % m
        if jacobi_sum_generalized(ctx, A, B, t) != want:
            return False
    return True


def binomial_reflection(ctx: PrimeContext) -> bool:
    """(A choose B) = B(-1) (B conj(A) choose B) for B in {w, phi}."""
    p = ctx.p
    for B in (Character.omega(p), Character.quadratic(p)):
        for A in _characters(ctx):
            lhs = binomial(ctx, A, B)
            rhs = binomial(ctx, B * A.conj, B) * char_eval(ctx, B, -1)
            digits = min(lhs.absolute_precision, rhs.absolute_precision)
            if not lhs.congruent(rhs, digits):
                return False
    return True


def gamma_reflection(ctx: PrimeContext) -> bool:
    p = ctx.p
    points = [Fraction(r, p - 1) for r in range(p)]
    points += [Fraction(r, 12) for r in range(-12, 13)]
    return all(reflection_check(ctx, x) for x in points if x.denominator % p)


def gamma_multiplication(ctx: PrimeContext) -> bool:
    p = ctx.p
    return all(
        multiplication_check(ctx, m, Fraction(r, p - 1))
        for m in (2, 3)
        if m % p
        for r in range(p)
    )


def gamma_products(ctx: PrimeContext) -> bool:
    """Both product identities for t in {1, 2, 3, 4, 6}."""
    p = ctx.p
    return all(
        lemma41_check(ctx, t, a, second=second)
        for t in (1, 2, 3, 4, 6)
        if t % p
        for a in range(p - 1)
        for second in (False, True)
    )


def floor_identities(ctx: PrimeContext) -> bool:
    p = ctx.p
    return all(
        floor_lemma_d1(d, a, p) and floor_lemma_d2(d, a, p)
        for d in range(1, 13)
        for a in range(p - 1)
    )


def davenport_hasse(ctx: PrimeContext) -> bool:
    q = ctx.p - 1
    return all(
        davenport_hasse_check(ctx, m, psi)
        for m in (2, 3, 4, 6)
        if q % m == 0
        for psi in _characters(ctx)
    )


def evans_greene(ctx: PrimeContext) -> bool:
    return all(evans_greene_check(ctx, t) for t in range(2, ctx.p - 1))


def kloosterman_f_lemmas(ctx: PrimeContext) -> bool:
    return lemma33_check(ctx) and all(lemma32_check(ctx, a) for a in range(2, ctx.p - 1))


LEMMAS: dict[str, Callable[[PrimeContext], bool]] = {
    "orthogonality": orthogonality,
    "generalized_jacobi": generalized_jacobi,
    "binomial_reflection": binomial_reflection,
    "gamma_reflection": gamma_reflection,
    "gamma_multiplication": gamma_multiplication,
    "gamma_products": gamma_products,
    "floor_identities": floor_identities,
    "davenport_hasse": davenport_hasse,
    "evans_greene": evans_greene,
    "kloosterman_f": kloosterman_f_lemmas,
}


def run_lemmas(ctx: PrimeContext) -> dict[str, bool]:
    """Every lemma at ctx, in a fixed order."""
    out = {}
    for name, fn in LEMMAS.items():
        out[name] = bool(fn(ctx))
        if not out[name]:
            log.warning("lemma %s fails at p=%d N=%d", name, ctx.p, ctx.N)
    return out
