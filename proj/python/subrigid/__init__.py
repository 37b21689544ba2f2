"""Exact cylinder measures and partial rigidity rates of substitution subshifts."""

import json as _json

from ._core import Error, InvalidInput, RejectedInput, normalize_spec, product_rate
from ._core import run as _run

__all__ = [
    "Error",
    "InvalidInput",
    "RejectedInput",
    "analyze",
    "certify",
    "delta",
    "diagnose",
    "measure",
    "normalize_spec",
    "product_rate",
    "profile",
    "approx",
    "run",
]


def _spec_text(spec):
    return spec if isinstance(spec, str) else _json.dumps(spec)


def run(command, spec=None, **options):
    """Run one command and return the parsed JSON report."""
    text = "" if spec is None else _spec_text(spec)
    report, _summary = _run(command, text, **options)
    return _json.loads(report)


def analyze(spec):
    return run("analyze", spec)["result"]


def measure(spec, word, use_float=False):
    return run("measure", spec, word=word, use_float=use_float)["result"]["measure"]


def delta(spec, max_m=0):
    return run("delta", spec, max_m=max_m)["result"]


def profile(spec, max_m=0):
    return run("profile", spec, max_m=max_m)["result"]["profile"]


def certify(spec):
    return run("certify", spec)["result"]["certificates"]


def diagnose(spec, n=20):
    return run("diagnose", spec, n=n)["result"]


def approx(target, eps):
    return run("approx", delta=str(target), eps=str(eps))["result"]
