"""Exact checks and searches for homogeneous Hamiltonian operators."""

import json

from ._core import (
    Error,
    InputError,
    __version__,
    bivector_residual,
    cotangent_rules,
    example_document,
    examples,
    find_bivectors,
    main,
    normal_form,
    total_x,
)
from ._core import run_task as _run_task


def run_task(problem, command, **options):
    """Run a task on a problem (dict, JSON text or catalog name); returns the report dict."""
    if isinstance(problem, dict):
        document = json.dumps(problem)
    elif problem in examples():
        document = example_document(problem)
    else:
        document = problem
    return json.loads(_run_task(document, command, **options))


__all__ = [
    "Error",
    "InputError",
    "__version__",
    "bivector_residual",
    "cotangent_rules",
    "example_document",
    "examples",
    "find_bivectors",
    "main",
    "normal_form",
    "run_task",
    "total_x",
]
