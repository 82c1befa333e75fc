import csv
import io
import json

import pytest

from ring.residue import make_context, max_precision
from util.errors import (
    BadArgument,
    NoRepresentation,
    TableBudgetExceeded,
    UsageError,
    WrongResidueClass,
)
from util.report import render_csv, render_json, summarize
from verify.checks import (
    REPORT_FIELDS,
    CheckResult,
    check_b_intermediate,
    check_companion,
    check_dgp_bridge,
    check_intro_identity,
    check_lemma_suite,
    check_master_identity,
    check_prop_equivalence,
    check_thm1,
    check_thm1_full,
    check_thm2,
    check_thm2_full,
    check_thm3,
    check_thm4,
    r_term,
    theorem_rhs,
)
from verify.lemmas import LEMMAS, run_lemmas
from verify.squares import two_squares
from verify.sweep import collect, expand_checks, gamma_precision, run_prime, sweep


def _jacobi(p):
    return make_context(p, max_precision(p))


def _gamma(p, N=2):
    return make_context(p, N, with_gamma=True)


def test_two_squares():
    """Positive pair with x odd."""
    assert two_squares(13) == (3, 2)
    assert two_squares(5) == (1, 2)
    assert two_squares(17) == (1, 4)
    with pytest.raises(NoRepresentation):
        two_squares(7)


def test_theorem_rhs_values():
    """T + p^2 phi(2) - R at p=5 and p=7."""
    assert r_term(make_context(7, 1)) == 0
    assert r_term(make_context(5, 1)) == -50
    assert theorem_rhs(make_context(5, 1)) == 35
    assert theorem_rhs(make_context(7, 1)) == -119


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17])
def test_master_identity(p):
    """The corrected master identity holds at full Jacobi precision."""
    res = check_master_identity(_jacobi(p))
    assert res.passed, f"{res.lhs} vs {res.rhs}"


def test_master_identity_anchors():
    """B' = 140 at p=5 and -714 at p=7."""
    assert check_master_identity(_jacobi(5)).lhs == "140"
    res = check_master_identity(_jacobi(7))
    assert res.lhs == "-714" and res.rhs == "-714"
    with pytest.raises(BadArgument):
        check_master_identity(_jacobi(3))


@pytest.mark.parametrize("p", [5, 7, 11])
def test_b_intermediate(p):
    """The normalised character sum matches B'."""
    assert check_b_intermediate(_jacobi(p)).passed


@pytest.mark.parametrize("p", [7, 13, 19])
def test_thm1_and_thm3(p):
    """G44 forms for p = 1 mod 6."""
    ctx = _gamma(p)
    assert check_thm1(ctx).passed
    assert check_thm3(ctx).passed


def test_thm1_anchor():
    """Both sides are -119 at p=7."""
    assert check_thm1(_gamma(7, 3)).rhs == "-119"


@pytest.mark.parametrize("p", [5, 11, 17])
def test_thm2_and_thm4(p):
    """G1212 forms for p = 5 mod 6."""
    ctx = _gamma(p)
    assert check_thm2(ctx).passed
    assert check_thm4(ctx).passed


def test_thm2_anchor():
    """G1212 = -7 at p=5."""
    res = check_thm2(_gamma(5, 3))
    assert res.passed and res.rhs == "-7"


@pytest.mark.parametrize("p", [7, 13, 19, 31])
def test_thm1_full_precision(p):
    """B'/(p-1) by the Jacobi route matches at every digit of max_precision(p)."""
    res = check_thm1_full(_jacobi(p))
    assert res.passed, f"{res.lhs} vs {res.rhs}"
    assert res.precision == max_precision(p)
    assert res.lhs == res.rhs


@pytest.mark.parametrize("p", [5, 11, 17, 23])
def test_thm2_full_precision(p):
    """phi(-1) D/(p(1-p)) matches with one digit spent on the division by p."""
    res = check_thm2_full(_jacobi(p))
    assert res.passed, f"{res.lhs} vs {res.rhs}"
    assert res.precision == max_precision(p) - 1
    assert res.lhs == res.rhs


def test_full_precision_rows_from_run_prime():
    """The sweep runs the Jacobi-route forms on the max-precision context."""
    (row,) = run_prime(13, ["thm1_full"])
    assert row.precision == 17 and row.passed
    (row,) = run_prime(11, ["thm2_full"])
    assert row.precision == max_precision(11) - 1 and row.passed
    (row,) = run_prime(7, ["thm1_full"])
    assert row.lhs == "-119"
    (row,) = run_prime(5, ["thm2_full"])
    assert row.lhs == "-7"
    assert run_prime(5, ["thm1_full"]) == []
    assert run_prime(7, ["thm2_full"]) == []


def test_residue_class_dispatch():
    """thm1/thm3 and thm2/thm4 split the primes >= 5."""
    with pytest.raises(WrongResidueClass):
        check_thm1(_gamma(5))
    with pytest.raises(WrongResidueClass):
        check_thm3(_gamma(11))
    with pytest.raises(WrongResidueClass):
        check_thm2(_gamma(7))
    with pytest.raises(WrongResidueClass):
        check_thm4(_gamma(13))
    for p in (5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        assert (p % 12 in (1, 7)) != (p % 12 in (5, 11)), f"p={p}"


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_prop_and_intro(p):
    """Jacobi sum against its G-form, and the intro identity."""
    ctx = _gamma(p)
    assert check_prop_equivalence(ctx).passed
    assert check_intro_identity(ctx).passed


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_dgp_bridge(p):
    """p^3 4F3(1) = -a(p) - p and T = -p a(p)."""
    assert check_dgp_bridge(_jacobi(p)).passed


def test_dgp_bridge_values():
    """Exact values at p=5 and p=7."""
    assert check_dgp_bridge(_jacobi(5)).lhs == "-3,10"
    assert check_dgp_bridge(_jacobi(7)).lhs == "-31,-168"


@pytest.mark.parametrize("p", [5, 7, 13])
def test_lemma_suite(p):
    """Every supporting identity holds."""
    ctx = _gamma(p)
    outcome = run_lemmas(ctx)
    assert list(outcome) == list(LEMMAS)
    assert all(outcome.values()), outcome
    assert check_lemma_suite(ctx).passed


def test_companion_is_reported():
    """The companion check always yields a row."""
    res = check_companion(_gamma(7))
    assert res.check_id == "companion" and res.prime == 7


def test_result_row_order():
    """Report rows carry exactly the report fields in order."""
    row = CheckResult(7, 7, "thm1", "a", "b", 2, True).to_dict()
    assert tuple(row) == REPORT_FIELDS
    assert row["pass"] is True and row["runtime_ms"] == 0.0


def test_expand_checks():
    """'all' expands in registry order; unknown names are usage errors."""
    assert expand_checks(["thm1", "master", "thm1"]) == ["master", "thm1"]
    assert "companion" in expand_checks(["all"])
    with pytest.raises(UsageError):
        expand_checks(["nope"])


def test_gamma_precision():
    """N is lowered until the table fits the budget."""
    assert gamma_precision(13, 3) == 3
    assert gamma_precision(13, 3, gamma_budget=200 * 8) == 2
    with pytest.raises(TableBudgetExceeded):
        gamma_precision(13, 2, gamma_budget=8)


def test_run_prime_skips_class_mismatch():
    """thm1 at p=5 is skipped rather than failed."""
    rows = run_prime(5, ["thm1", "thm2"])
    assert [r.check_id for r in rows] == ["thm2"]


def test_collect_single_row():
    """One prime, one check, one row."""
    rows = collect(13, 13, ["thm1"])
    assert len(rows) == 1 and rows[0].passed and rows[0].class_mod_12 == 1


def test_collect_usage_errors():
    """pmin below 5 and reversed ranges."""
    with pytest.raises(UsageError):
        collect(4, 10, ["master"])
    with pytest.raises(UsageError):
        collect(11, 7, ["master"])


def test_report_is_deterministic():
    """Identical inputs give identical bytes."""
    a = render_json(collect(5, 13, ["intro", "thm1", "thm2"]))
    b = render_json(collect(5, 13, ["intro", "thm1", "thm2"]))
    assert a == b
    rows = json.loads(a)
    assert [r["prime"] for r in rows] == [5, 5, 7, 7, 11, 11, 13, 13]
    assert all(r["pass"] for r in rows)


def test_csv_report():
    """Header row plus one row per result."""
    results = collect(7, 11, ["intro"])
    rows = list(csv.reader(io.StringIO(render_csv(results))))
    assert tuple(rows[0]) == REPORT_FIELDS
    assert len(rows) == 3 and rows[1][0] == "7" and rows[1][6] == "true"


def test_summarize():
    """Counts, failures and informational rows."""
    ok = CheckResult(7, 7, "thm1", "x", "x", 2, True)
    bad = CheckResult(11, 11, "thm2", "x", "y", 2, False)
    info = CheckResult(7, 7, "companion", "x", "y", 2, False)
    lines = summarize([ok, bad, info], {"companion"})
    assert lines[0] == "1/2 checks passed over 2 primes."
    assert any("thm2 fails at p=11" in line for line in lines)
    assert any("informational" in line for line in lines)


def test_sweep_writes_report(tmp_path):
    """Exit code 0 and a JSON file when everything passes."""
    out = tmp_path / "report.json"
    assert sweep(5, 13, ["intro"], out_path=out) == 0
    rows = json.loads(out.read_text())
    assert len(rows) == 4


def test_sweep_threads_match_sequential():
    """The worker pool returns the same rows in the same order."""
    seq = render_json(collect(5, 19, ["intro"], threads=1))
    par = render_json(collect(5, 19, ["intro"], threads=2))
    assert seq == par
