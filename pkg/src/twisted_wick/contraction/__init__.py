"""Twisted contraction and partial creation/annihilation operators."""

from twisted_wick.contraction.engine import (
    ContractionEngine,
    annihilate,
    contract,
    contract_via_leibniz,
    create,
)

__all__ = [
    "ContractionEngine",
    "annihilate",
    "contract",
    "contract_via_leibniz",
    "create",
]
