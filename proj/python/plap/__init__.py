"""Positive solutions of sublinear 1D p-Laplacian problems with an indefinite weight.

Every function takes a problem config, either as a dict or as a JSON string, in the same
format the ``plap`` command-line tool reads (see docs/config.md).
"""

import json as _json

from ._core import PlapError, REPORT_SCHEMA, c_pq, solve_g
from . import _core

__all__ = ["PlapError", "REPORT_SCHEMA", "c_pq", "solve_g", "check", "eigen", "certify", "solve", "verify"]


def _text(config):
    return config if isinstance(config, str) else _json.dumps(config)


def check(config, which=None):
    """lambda1 and the condition reports."""
    return _json.loads(_core.check_json(_text(config), which or ""))


def eigen(config):
    """lambda1, rayleigh and the sup-normalized eigenfunction samples (x, u)."""
    return _json.loads(_core.eigen_json(_text(config)))


def certify(config, theorem=None, kind="sub"):
    """Build and verify a subsolution (needs theorem) or the supersolution."""
    return _json.loads(_core.certify_json(_text(config), theorem or "", kind))


def solve(config, policy="auto"):
    """Full pipeline; raises PlapError (code 'no-certificate') when nothing applies."""
    return _json.loads(_core.solve_json(_text(config), policy))


def verify(config, kind, x, u, tests=200, seed=0):
    """Check samples (x, u) as 'sub', 'super' or 'solution'."""
    return _json.loads(_core.verify_json(_text(config), kind, list(x), list(u), tests, seed))
