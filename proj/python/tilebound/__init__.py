"""Boundary dimension of self-affine tiles.

Pairs are given as an integer matrix (list of rows) and a list of digit
vectors. Reports come back as plain dicts with the same layout as the CLI's
JSON output.
"""

import json

from ._tilebound import (
    BudgetExceeded,
    InternalError,
    ParseError,
    TileboundError,
    ValidationError,
    boundary_points,
    gamma_points,
    read_spec,
    render,
)
from . import _tilebound

__all__ = [
    "BudgetExceeded",
    "InternalError",
    "ParseError",
    "TileboundError",
    "ValidationError",
    "analyze",
    "boundary_points",
    "box_count",
    "dimension",
    "gamma_points",
    "growth_rate",
    "primitivize",
    "read_spec",
    "render",
    "validate",
]


def validate(matrix, digits):
    return json.loads(_tilebound.validate_json(matrix, digits))


def analyze(matrix, digits, with_dimension=True, tol=1e-9):
    return json.loads(_tilebound.analyze_json(matrix, digits, with_dimension, tol))


def dimension(matrix, digits, tol=1e-9):
    return analyze(matrix, digits, True, tol)["dimension"]


def primitivize(matrix, digits):
    return json.loads(_tilebound.primitivize_json(matrix, digits))


def growth_rate(matrix, digits, k_min, k_max, ball=None, budget=100_000_000):
    return json.loads(_tilebound.growth_json(matrix, digits, k_min, k_max, ball, budget))


def box_count(matrix, digits, k, budget=100_000_000):
    return json.loads(_tilebound.box_count_json(matrix, digits, k, budget))
