from __future__ import annotations

import os

from flask import Flask, jsonify, request

from main import run_eval  # reuse CLI logic
from util.config_help import CONFIG_HELP, config_warnings
from util.errors import NslabError
from verify.sweep import CHECKS, DEFAULT_GAMMA_PRECISION, run_prime


def _int_arg(name: str, default: int | None = None) -> int:
    raw = request.args.get(name)
    if raw is None:
        if default is None:
            raise NslabError(f"missing query parameter {name!r}")
        return default
    try:
        return int(raw)
    except ValueError:
        raise NslabError(f"query parameter {name}={raw!r} is not an integer") from None


def create_app() -> Flask:
    app = Flask(__name__)

    @app.errorhandler(NslabError)
    def bad_request(exc: NslabError):
        return jsonify({"error": str(exc)}), 400

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.get("/config")
    def config():
        pmin = _int_arg("pmin", 5)
        pmax = _int_arg("pmax", 100)
        precision = _int_arg("precision", DEFAULT_GAMMA_PRECISION)
        return jsonify(
            {
                "help": CONFIG_HELP,
                "checks": list(CHECKS),
                "warnings": config_warnings(pmin, pmax, precision),
            }
        )

    @app.get("/eval")
    def evaluate():
        """
        Example:
          /eval?what=g44&p=13&precision=2
          /eval?what=ap&p=7
        """
        what = request.args.get("what", "")
        p = _int_arg("p")
        precision = _int_arg("precision", DEFAULT_GAMMA_PRECISION)
        return jsonify(run_eval(what, p, precision))

    @app.get("/verify")
    def verify():
        """
        Example:
          /verify?check=master&p=13
        """
        check = request.args.get("check", "")
        if check not in CHECKS:
            raise NslabError(f"unknown check {check!r}")
        p = _int_arg("p")
        if p < 5:
            raise NslabError(f"p={p} is below 5")
        precision = _int_arg("precision", DEFAULT_GAMMA_PRECISION)
        results = run_prime(p, [check], precision)
        return jsonify({"p": p, "results": [r.to_dict() for r in results]})

    return app


def serve():
    app = create_app()
    port = int(os.environ.get("PORT", "8000"))
    app.run(host="0.0.0.0", port=port)
