import json

import pytest

from main import build_parser, coeffs_payload, main, run_eval
from util.errors import UsageError


def test_verify_writes_json(tmp_path):
    """A passing sweep exits 0 and writes one row per prime."""
    out = tmp_path / "r.json"
    code = main(["verify", "--check", "master", "--pmin", "5", "--pmax", "7", "--out", str(out)])
    assert code == 0
    rows = json.loads(out.read_text())
    assert [r["prime"] for r in rows] == [5, 7]
    assert rows[1]["lhs"] == "-714"
    assert all(r["runtime_ms"] == 0.0 for r in rows)


def test_verify_csv_to_stdout(capsys):
    """CSV goes to stdout when --out is missing."""
    code = main(["verify", "--check", "thm1", "--check", "thm2", "--pmin", "5", "--pmax", "13", "--format", "csv"])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "prime,class_mod_12,check_id,lhs,rhs,precision,pass,runtime_ms"
    assert len(lines) == 5


def test_usage_errors_exit_two(capsys):
    """pmin below 5 is a usage error; bad choices stop argparse."""
    assert main(["verify", "--check", "master", "--pmin", "4", "--pmax", "10"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--check", "nope", "--pmin", "5", "--pmax", "7"])
    assert exc.value.code == 2


def test_eval(capsys):
    """eval prints one JSON object."""
    assert main(["eval", "ap", "--p", "7"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload == {"what": "ap", "p": 7, "a": 24, "b": -24}
    assert main(["eval", "tsheaf", "--p", "5"]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == 10


def test_run_eval_values():
    """Gauss-sum total and G-functions."""
    assert run_eval("bsum", 7)["value"] == -714
    assert run_eval("bsum", 5)["value"] == 140
    g = run_eval("g1212", 5, precision=3)
    assert g["precision"] == 3 and g["valuation"] == 0
    assert run_eval("g44", 7, precision=3)["valuation"] == -3
    with pytest.raises(UsageError):
        run_eval("nope", 7)
    with pytest.raises(UsageError):
        run_eval("g44", 3)


def test_coeffs(tmp_path):
    """q-expansion of f1 to a file."""
    out = tmp_path / "f1.json"
    assert main(["coeffs", "--upto", "9", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["coefficients"] == [0, 1, 0, -4, 0, -2, 0, 24, 0, -11]
    assert coeffs_payload(3)["coefficients"] == [0, 1, 0, -4]


def test_parser_defaults():
    """Precision defaults to 2 and format to json."""
    args = build_parser().parse_args(["verify", "--check", "all", "--pmin", "5", "--pmax", "5"])
    assert args.precision == 2 and args.format == "json" and args.threads == 1
