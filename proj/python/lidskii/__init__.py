"""Python front end for the lidskii C++ library."""

import json as _json

from ._lidskii import (  # noqa: F401
    ConfigError,
    DomainError,
    Error,
    InsufficientDataError,
    NonDecayingError,
    beta,
    convergence_exponent,
    log_damped_moduli,
    rl_derivative,
    rl_integral,
    verify,
)
from ._lidskii import solve_json as _solve_json


def solve(config, residual=False):
    """Solve a Cauchy problem given as a dict or JSON string (same format as the CLI)."""
    text = config if isinstance(config, str) else _json.dumps(config)
    return _solve_json(text, residual)
