"""Run every check on one twist system.

Independent checks fan out over worker threads; the quotient relations run
in a second wave because they reuse the well-definedness reports. Report
order is fixed (CheckType order, then implication reports).
"""

import asyncio
import logging
from collections.abc import Mapping
from typing import Any

from twisted_wick.checks.base import BaseCheck, CheckReport, CheckType, Verdict
from twisted_wick.checks.consistency import (
    BKCondition2Check,
    DoubleContractionCheck,
    IdealPreservedCheck,
    PiStarCheck,
    WZCheck,
    YBECheck,
)
from twisted_wick.checks.relations import (
    DDRelationCheck,
    DPlusRelationCheck,
    JSWRelationCheck,
)
from twisted_wick.exceptions import ResourceLimitError
from twisted_wick.quotient import quotient_algebra
from twisted_wick.twist import TwistSystem

logger = logging.getLogger(__name__)

# (hypotheses, conclusion): sufficient conditions, asserted one way only
IMPLICATIONS: tuple[tuple[tuple[CheckType, ...], CheckType], ...] = (
    ((CheckType.WZ, CheckType.BK_CONDITION2), CheckType.IDEAL_PRESERVED),
    ((CheckType.YBE, CheckType.DOUBLE_CONTRACTION), CheckType.PI_STAR),
)


def _error_report(check: BaseCheck, error: BaseException) -> CheckReport:
    return check.report(
        Verdict.FAIL,
        witness={"error": f"{type(error).__name__}: {error}"},
        notes=["check raised instead of returning a verdict"],
    )


async def _run_wave(
    checks: list[BaseCheck], ts: TwistSystem, n_max: int
) -> dict[str, CheckReport]:
    results = await asyncio.gather(
        *(asyncio.to_thread(check.run, ts, n_max) for check in checks),
        return_exceptions=True,
    )
    reports: dict[str, CheckReport] = {}
    for check, result in zip(checks, results, strict=True):
        # 개별 체크 실패 시 suite 는 계속 진행
        if isinstance(result, BaseException):
            logger.warning(f"{check.name} crashed: {result}")
            reports[check.name] = _error_report(check, result)
        else:
            reports[check.name] = result
    return reports


def _warm_up(ts: TwistSystem, n_max: int) -> None:
    """Build the shared ideal levels before fan-out."""
    algebra = quotient_algebra(ts)
    try:
        algebra.dual_ideal()
        for n in range(n_max + 1):
            algebra.level(n)
    except ResourceLimitError as e:
        logger.warning(f"ideal levels stop early: {e}")


def implication_reports(reports: Mapping[str, CheckReport]) -> list[CheckReport]:
    """`unsound` reports for every violated implication."""
    found = []
    for hypotheses, conclusion in IMPLICATIONS:
        premises = [reports.get(h.value) for h in hypotheses]
        result = reports.get(conclusion.value)
        if result is None or not all(p is not None and p.passed for p in premises):
            continue
        if result.verdict is Verdict.FAIL:
            name = "implication:" + "+".join(h.value for h in hypotheses)
            logger.error(f"✗ {name} violated by {conclusion.value}")
            found.append(
                CheckReport(
                    name,
                    Verdict.UNSOUND,
                    witness={
                        "conclusion": conclusion.value,
                        "conclusion_witness": result.witness,
                    },
                    notes=["hypotheses pass but the conclusion fails"],
                )
            )
    return found


def overall_verdict(reports: list[CheckReport]) -> Verdict:
    """fail if anything failed, else skipped-resource if any, else pass."""
    if any(r.failed for r in reports):
        return Verdict.FAIL
    if any(r.verdict is Verdict.SKIPPED_RESOURCE for r in reports):
        return Verdict.SKIPPED_RESOURCE
    return Verdict.PASS


async def run_all_async(
    ts: TwistSystem, n_max: int, parameters: Mapping[str, Any] | None = None
) -> list[CheckReport]:
    """Run the suite.

    Args:
        ts: 트위스트 시스템
        n_max: degree bound
        parameters: 모든 리포트에 추가할 파라미터 (예: {"q": "symbolic"})

    Returns:
        Reports in CheckType order, followed by implication reports
    """
    _warm_up(ts, n_max)
    first: list[BaseCheck] = [
        WZCheck(),
        BKCondition2Check(),
        IdealPreservedCheck(),
        YBECheck(),
        DoubleContractionCheck(),
        PiStarCheck(),
        JSWRelationCheck(),
    ]
    reports = await _run_wave(first, ts, n_max)
    second: list[BaseCheck] = [
        DDRelationCheck(reports),
        DPlusRelationCheck(reports),
    ]
    reports.update(await _run_wave(second, ts, n_max))

    ordered = [reports[check_type.value] for check_type in CheckType]
    ordered.extend(implication_reports(reports))
    for report in ordered:
        report.parameters.update(parameters or {})
    passed = sum(r.passed for r in ordered)
    logger.info(f"suite on {ts.name or 'system'}: {passed}/{len(ordered)} passed")
    return ordered


def run_all(
    ts: TwistSystem, n_max: int, parameters: Mapping[str, Any] | None = None
) -> list[CheckReport]:
    """Synchronous wrapper around run_all_async."""
    return asyncio.run(run_all_async(ts, n_max, parameters))
