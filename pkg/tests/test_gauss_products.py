import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chars.characters import Character, char_eval
from chars.gauss import (
    GaussProductSpec,
    davenport_hasse_check,
    gauss_product_gamma,
    kloosterman_gauss_sum,
    kloosterman_gauss_sum_gamma,
    kloosterman_term,
    kloosterman_term_spec,
    reduce_gauss_product,
)
from ring.residue import make_context
from util.errors import BadArgument, NotBalanced


def _same(x, y):
    return x.congruent(y, min(x.absolute_precision, y.absolute_precision))


def test_reduce_known_values():
    """Conjugate pairs, trivial characters and cancellation."""
    ctx = make_context(5, 3)
    phi = Character.quadratic(5)
    assert reduce_gauss_product(ctx, GaussProductSpec.of(5, [phi, phi])).congruent(5, 3)
    eps = Character.trivial(5)
    assert reduce_gauss_product(ctx, GaussProductSpec.of(5, [eps, eps])).congruent(1, 3)
    ctx13 = make_context(13, 2)
    w = Character.omega(13)
    sign = char_eval(ctx13, w, -1)
    spec = GaussProductSpec.of(13, [w, w.conj], scalar=sign)
    assert reduce_gauss_product(ctx13, spec).congruent(13, 2)
    same = GaussProductSpec.of(13, [w, w**3], [w, w**3])
    assert reduce_gauss_product(ctx13, same).congruent(1, 2)


def test_spec_valuation_and_balance():
    """pi-exponent bookkeeping."""
    phi = Character.quadratic(7)
    spec = GaussProductSpec.of(7, [phi, phi])
    assert spec.is_balanced and spec.valuation == 1
    lone = GaussProductSpec.of(7, [Character.omega(7)])
    assert not lone.is_balanced
    with pytest.raises(NotBalanced):
        lone.valuation
    with pytest.raises(NotBalanced):
        reduce_gauss_product(make_context(7, 2), lone)
    with pytest.raises(BadArgument):
        reduce_gauss_product(make_context(5, 2), spec)
    assert (spec * spec.inverse()).is_balanced


def _jacobi_blocks(p, pairs):
    """prod over pairs of g(A)g(B)/g(AB), or its inverse for negative blocks."""
    spec = GaussProductSpec.of(p, [])
    for a, b, flip in pairs:
        block = GaussProductSpec.of(p, [a, b], [a + b])
        spec = spec * (block.inverse() if flip else block)
    return spec


@settings(max_examples=40, deadline=None)
@given(
    p=st.sampled_from([5, 7, 11, 13]),
    pairs=st.lists(
        st.tuples(st.integers(0, 11), st.integers(0, 11), st.booleans()), min_size=1, max_size=4
    ),
)
def test_jacobi_route_matches_gamma_route(p, pairs):
    """Both evaluations agree on random balanced products."""
    ctx = make_context(p, 2, with_gamma=True)
    spec = _jacobi_blocks(p, pairs)
    assert spec.is_balanced
    by_jacobi = reduce_gauss_product(ctx, spec)
    by_gamma = gauss_product_gamma(ctx, spec)
    assert _same(by_jacobi, by_gamma)


@pytest.mark.parametrize("seed", range(5))
def test_schedule_independence(seed):
    """A random legal schedule gives the same value as the fixed one."""
    ctx = make_context(13, 3)
    rng = random.Random(seed)
    for a in range(12):
        spec = kloosterman_term_spec(ctx, a)
        fixed = reduce_gauss_product(ctx, spec)
        shuffled = reduce_gauss_product(ctx, spec, rng=rng)
        assert _same(fixed, shuffled), f"a={a}"


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_kloosterman_term_routes(p):
    """Closed-form terms match the reducer and Gross-Koblitz for every a."""
    ctx = make_context(p, 2, with_gamma=True)
    for a in range(p - 1):
        term = kloosterman_term(ctx, a)
        spec = kloosterman_term_spec(ctx, a)
        assert _same(term, reduce_gauss_product(ctx, spec)), f"reducer a={a}"
        assert _same(term, gauss_product_gamma(ctx, spec)), f"gamma a={a}"


@pytest.mark.parametrize("p", [5, 7, 13])
def test_kloosterman_degenerate_terms(p):
    """a = 0 gives p phi(-1); a = (p-1)/2 gives p^2."""
    ctx = make_context(p, 3)
    phi_m1 = char_eval(ctx, Character.quadratic(p), -1)
    assert kloosterman_term(ctx, 0).congruent(p * phi_m1, 3)
    assert kloosterman_term(ctx, (p - 1) // 2).congruent(p * p, 3)


def test_kloosterman_gauss_sum_values():
    """Exact sums at p=5 and p=7."""
    assert kloosterman_gauss_sum(make_context(5, 5)).lift_integer(1000) == 140
    s7 = kloosterman_gauss_sum(make_context(7, 5))
    assert s7.lift_integer(5000) == -714
    assert s7.residue(2) == 21


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19])
@pytest.mark.parametrize("form", ["proof", "direct"])
def test_gamma_route_equivalence(p, form):
    """Gamma_p route reproduces the Jacobi route mod p^2."""
    ctx = make_context(p, 2, with_gamma=True)
    jac = kloosterman_gauss_sum(ctx)
    gam = kloosterman_gauss_sum_gamma(ctx, form=form)
    assert jac.congruent(gam, 2)


def test_gamma_route_errors():
    """Unknown forms and small primes are refused."""
    with pytest.raises(BadArgument):
        kloosterman_gauss_sum_gamma(make_context(7, 2, with_gamma=True), form="other")
    with pytest.raises(BadArgument):
        kloosterman_gauss_sum(make_context(3, 2))


def test_davenport_hasse_known_values():
    """Small instances including the trivial character."""
    ctx = make_context(13, 2)
    w = Character.omega(13)
    assert davenport_hasse_check(ctx, 2, w)
    assert davenport_hasse_check(ctx, 2, Character.trivial(13))
    assert davenport_hasse_check(ctx, 3, w)
    with pytest.raises(BadArgument):
        davenport_hasse_check(ctx, 5, w)
    with pytest.raises(BadArgument):
        davenport_hasse_check(make_context(7, 2), 4, Character.omega(7))


@pytest.mark.parametrize("p,ms", [(13, (2, 3, 4, 6)), (7, (2, 3, 6)), (17, (2, 4))])
def test_davenport_hasse_exhaustive(p, ms):
    """Every psi and every admissible m."""
    ctx = make_context(p, 3)
    for m in ms:
        for e in range(p - 1):
            assert davenport_hasse_check(ctx, m, Character(e, p)), f"m={m} psi=w^{e}"


@pytest.mark.parametrize("p,m", [(13, 2), (13, 3), (13, 4), (13, 6), (7, 6), (17, 4)])
def test_davenport_hasse_trivial_power(p, m):
    """psi nontrivial with psi^m = eps: g(eps) = -1 closes the reduction."""
    ctx = make_context(p, 3)
    step = (p - 1) // m
    for k in range(1, m):
        psi = Character(k * step, p)
        assert davenport_hasse_check(ctx, m, psi), f"m={m} psi=w^{k * step}"
