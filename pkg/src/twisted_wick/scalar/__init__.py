"""Exact scalar field Q(q) and its coefficient grammar."""

from twisted_wick.scalar.field import (
    ONE,
    POLY_RING,
    ZERO,
    Q,
    Scalar,
    scalar_add,
    scalar_eval,
    scalar_inv,
    scalar_mul,
    scalar_neg,
)
from twisted_wick.scalar.grammar import coefficient_term, format_scalar, parse_scalar

__all__ = [
    "ONE",
    "POLY_RING",
    "Q",
    "ZERO",
    "Scalar",
    "coefficient_term",
    "format_scalar",
    "parse_scalar",
    "scalar_add",
    "scalar_eval",
    "scalar_inv",
    "scalar_mul",
    "scalar_neg",
]
