"""Consistency and relation checks with witnesses."""

from twisted_wick.checks.base import (
    SYMBOLIC_NOTE,
    BaseCheck,
    CheckReport,
    CheckType,
    Verdict,
)
from twisted_wick.checks.consistency import (
    check_bk_condition2,
    check_double_contraction,
    check_ideal_preserved,
    check_pi_star_invariance,
    check_t43_condition2,
    check_wz,
    check_ybe,
)
from twisted_wick.checks.relations import (
    check_relation_dd,
    check_relation_dplus,
    check_relation_jsw,
)
from twisted_wick.checks.suite import (
    implication_reports,
    overall_verdict,
    run_all,
    run_all_async,
)

__all__ = [
    "SYMBOLIC_NOTE",
    "BaseCheck",
    "CheckReport",
    "CheckType",
    "Verdict",
    "check_bk_condition2",
    "check_double_contraction",
    "check_ideal_preserved",
    "check_pi_star_invariance",
    "check_relation_dd",
    "check_relation_dplus",
    "check_relation_jsw",
    "check_t43_condition2",
    "check_wz",
    "check_ybe",
    "implication_reports",
    "overall_verdict",
    "run_all",
    "run_all_async",
]
