"""Creation/annihilation words, normal ordering and the Fock-space action."""

from twisted_wick.wick.opword import (
    OpWord,
    Symbol,
    SymbolKind,
    annihilator,
    creator,
    format_opword,
    inversions,
    parse_opword,
)
from twisted_wick.wick.rewriter import (
    NormalOrderer,
    act_on,
    normal_order,
    vacuum_action,
    vacuum_expectation,
)
from twisted_wick.wick.tracker import RewriteTracker

__all__ = [
    "NormalOrderer",
    "OpWord",
    "RewriteTracker",
    "Symbol",
    "SymbolKind",
    "act_on",
    "annihilator",
    "creator",
    "format_opword",
    "inversions",
    "normal_order",
    "parse_opword",
    "vacuum_action",
    "vacuum_expectation",
]
