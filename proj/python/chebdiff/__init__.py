"""Chebyshev functional, differences of two functionals and their bounds."""

import json

from ._core import (  # noqa: F401
    DomainError,
    Error,
    Function,
    MissingConstantError,
    ParseError,
    PreconditionError,
    QuadratureError,
    beta,
    bound_ids,
    chebyshev_functional,
    chebyshev_via_identity,
    evaluate_bound,
    functional_difference,
    params_from,
    pre_gruss,
    sweep_ids,
)
from . import _core

__version__ = "0.1.0"


def verify(**config):
    """Run a seeded sweep. Keyword names follow the CLI config file
    (seed, corpus_size, configs, theorems, families, witnesses, ...).
    Returns a list of record dicts."""
    text = _core._verify_jsonl(json.dumps(config))
    return [json.loads(line) for line in text.splitlines() if line]


def summary(records):
    """Fixed-width per-theorem table for records returned by verify()."""
    return _core._summary_text("".join(json.dumps(r) + "\n" for r in records))
