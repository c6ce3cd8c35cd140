"""Exact verification of Frolicher-Nijenhuis identities on polynomial models."""

import json
import os

from ._fncalc import (
    POINT_TOLERANCE,
    FncalcError,
    Poly,
    SchemaError,
    ValidationError,
    catalog,
    suite_names,
    variable_names,
)
from . import _fncalc

__all__ = [
    "POINT_TOLERANCE", "FncalcError", "Poly", "SchemaError", "ValidationError",
    "catalog", "suite_names", "variable_names", "generate", "verify", "verify_text", "exit_code",
]


def generate(kind, n=1, degree=1, seed=42):
    """Built-in model as a dict."""
    return json.loads(_fncalc.generate(kind, n, degree, seed))


def _model_text(model):
    if isinstance(model, dict):
        return json.dumps(model)
    if isinstance(model, (str, os.PathLike)) and os.path.exists(model):
        with open(model) as f:
            return f.read()
    if isinstance(model, str):
        return model
    raise TypeError("model must be a dict, a JSON string or a path")


def verify(model, suites=("all",), backend="exact", samples=100, seed=1):
    """Report as a dict; `model` is a dict, JSON text or a file path."""
    return json.loads(_fncalc.verify(_model_text(model), list(suites), backend, samples, seed, "json"))


def verify_text(model, suites=("all",), backend="exact", samples=100, seed=1):
    return _fncalc.verify(_model_text(model), list(suites), backend, samples, seed, "text")


def exit_code(report):
    return report["exit_code"]
