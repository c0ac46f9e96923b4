"""Graded ideal, quotient levels and the induced operators d_i, d⁺_j."""

from twisted_wick.quotient.algebra import (
    DimensionRow,
    QuotientAlgebra,
    QuotientLevel,
    check_dimension,
    dimension_table,
    ideal_level,
    project,
    quotient_algebra,
    quotient_annihilate,
    quotient_create,
)
from twisted_wick.quotient.subspace import MembershipResult, Subspace, membership

__all__ = [
    "DimensionRow",
    "MembershipResult",
    "QuotientAlgebra",
    "QuotientLevel",
    "Subspace",
    "check_dimension",
    "dimension_table",
    "ideal_level",
    "membership",
    "project",
    "quotient_algebra",
    "quotient_annihilate",
    "quotient_create",
]
