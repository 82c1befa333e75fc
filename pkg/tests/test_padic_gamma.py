from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chars.characters import Character, char_eval
from padic.gamma import (
    BYTES_PER_ENTRY,
    DEFAULT_GAMMA_ENTRIES,
    RationalArg,
    a0,
    floor_lemma_d1,
    floor_lemma_d2,
    frac,
    gamma_at,
    gamma_int_direct,
    gamma_product,
    gamma_table,
    lemma41_check,
    multiplication_check,
    reflection_check,
    resolve_gamma_budget,
)
from ring.residue import make_context
from util.errors import BadArgument, BadDenominator, TableBudgetExceeded


def test_gamma_small_values():
    """Gamma_5 at 0..3 mod 25."""
    ctx = make_context(5, 2, with_gamma=True)
    assert gamma_at(ctx, 0) == 1
    assert gamma_at(ctx, 1) == 24
    assert gamma_at(ctx, 2) == 1
    assert gamma_at(ctx, 3) == 23


@pytest.mark.parametrize("p,N", [(5, 2), (7, 2), (3, 4)])
def test_table_matches_direct_products(p, N):
    """Recurrence table equals the defining product at every index."""
    ctx = make_context(p, N, with_gamma=True)
    table = gamma_table(ctx)
    for k in range(p**N):
        assert int(table[k]) == gamma_int_direct(k, p, N), f"Gamma_{p}({k})"


def test_gamma_half_squared():
    """Gamma_p(1/2)^2 = -phi(-1)."""
    for p in (5, 7, 11, 13, 17):
        ctx = make_context(p, 2, with_gamma=True)
        phi_m1 = char_eval(ctx, Character.quadratic(p), -1)
        assert gamma_at(ctx, Fraction(1, 2)) ** 2 % ctx.modulus == -phi_m1 % ctx.modulus


def test_gamma_errors():
    """Missing table, p in the denominator and budget overruns."""
    with pytest.raises(BadArgument):
        gamma_at(make_context(7, 2), Fraction(1, 2))
    ctx = make_context(7, 2, with_gamma=True)
    with pytest.raises(BadDenominator):
        gamma_at(ctx, Fraction(1, 7))
    with pytest.raises(TableBudgetExceeded):
        gamma_table(make_context(7, 3), budget=100)
    with pytest.raises(TableBudgetExceeded):
        make_context(13, 3, with_gamma=True, gamma_budget=1000 * BYTES_PER_ENTRY)


def test_budget_resolution(monkeypatch):
    """Explicit bytes beat the environment, which beats the default."""
    monkeypatch.delenv("NSLAB_GAMMA_BUDGET", raising=False)
    assert resolve_gamma_budget() == DEFAULT_GAMMA_ENTRIES
    assert resolve_gamma_budget(800) == 100
    monkeypatch.setenv("NSLAB_GAMMA_BUDGET", "1600")
    assert resolve_gamma_budget() == 200
    with pytest.raises(BadArgument):
        resolve_gamma_budget(0)


def test_rational_arg():
    """Reduced form, floor and fractional part."""
    x = RationalArg(-6, 4)
    assert (x.num, x.den) == (-3, 2)
    assert x.floor() == -2
    assert x.frac() == RationalArg(1, 2)
    assert RationalArg(1, -3) == RationalArg(-1, 3)
    assert str(RationalArg(5, 1)) == "5"
    assert (RationalArg(1, 3) + Fraction(1, 6)) == RationalArg(1, 2)
    assert (1 - RationalArg(1, 4)) == RationalArg(3, 4)
    assert frac(Fraction(-1, 12)) == Fraction(11, 12)
    with pytest.raises(BadArgument):
        RationalArg(1, 0)


def test_a0():
    """Representative in 1..p."""
    ctx = make_context(7, 1)
    assert a0(ctx, Fraction(1, 2)) == 4
    assert a0(ctx, 0) == 7
    assert a0(ctx, 7) == 7


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_reflection_exhaustive(p):
    """Gamma_p(x) Gamma_p(1-x) = (-1)^a0(x) over x = r/(p-1) and x = r/12."""
    ctx = make_context(p, 2, with_gamma=True)
    for r in range(p):
        assert reflection_check(ctx, Fraction(r, p - 1))
    for r in range(-12, 13):
        assert reflection_check(ctx, Fraction(r, 12))


@pytest.mark.parametrize("p", [5, 7, 13])
@pytest.mark.parametrize("m", [2, 3])
def test_multiplication_formula(p, m):
    """Product formula at every x = r/(p-1)."""
    ctx = make_context(p, 2, with_gamma=True)
    for r in range(p):
        assert multiplication_check(ctx, m, Fraction(r, p - 1)), f"m={m} r={r}"


def test_multiplication_formula_rejects_bad_input():
    """x must be r/(p-1) and m prime to p."""
    ctx = make_context(7, 2, with_gamma=True)
    with pytest.raises(BadArgument):
        multiplication_check(ctx, 2, Fraction(1, 5))
    with pytest.raises(BadArgument):
        multiplication_check(ctx, 7, Fraction(1, 6))


@pytest.mark.parametrize("t", [1, 2, 3, 4, 6])
@pytest.mark.parametrize("second", [False, True])
def test_lemma41(t, second):
    """Both product identities at p=13, every a."""
    ctx = make_context(13, 2, with_gamma=True)
    for a in range(12):
        assert lemma41_check(ctx, t, a, second=second), f"t={t} a={a}"


def test_floor_lemmas_exhaustive():
    """Both floor identities for d <= 12 and every a."""
    for p in (5, 7, 11, 13, 29):
        for d in range(1, 13):
            for a in range(p - 1):
                assert floor_lemma_d1(d, a, p), f"d1 d={d} a={a} p={p}"
                assert floor_lemma_d2(d, a, p), f"d2 d={d} a={a} p={p}"
    with pytest.raises(BadArgument):
        floor_lemma_d1(0, 1, 5)


@settings(max_examples=40, deadline=None)
@given(
    upper=st.lists(st.fractions(min_value=0, max_value=3, max_denominator=12), max_size=4),
    lower=st.lists(st.fractions(min_value=0, max_value=3, max_denominator=12), max_size=4),
)
def test_gamma_product_is_a_quotient(upper, lower):
    """gamma_product(upper, lower) * prod lower = prod upper."""
    ctx = make_context(13, 2, with_gamma=True)
    m = ctx.modulus
    q = gamma_product(ctx, upper, lower)
    back = q * gamma_product(ctx, lower) % m
    assert back == gamma_product(ctx, upper)
