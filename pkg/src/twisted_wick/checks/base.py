"""Check verdicts, reports and the base check interface."""

import logging
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from twisted_wick.exceptions import ResourceLimitError
from twisted_wick.scalar import Scalar
from twisted_wick.tensorspace import Tensor
from twisted_wick.twist import TwistSystem

logger = logging.getLogger(__name__)

SYMBOLIC_NOTE = (
    "holds over Q(q); valid for all but finitely many specialisations of q"
)


class Verdict(Enum):
    """Check outcome."""

    PASS = "pass"
    FAIL = "fail"
    SKIPPED_RESOURCE = "skipped-resource"
    SKIPPED = "skipped"
    UNSOUND = "unsound"


class CheckType(Enum):
    """Checks in suite order."""

    WZ = "check_wz"
    BK_CONDITION2 = "check_bk_condition2"
    IDEAL_PRESERVED = "check_ideal_preserved"
    YBE = "check_ybe"
    DOUBLE_CONTRACTION = "check_t43_condition2"
    PI_STAR = "check_pi_star_invariance"
    RELATION_JSW = "check_relation_jsw"
    RELATION_DD = "check_relation_dd"
    RELATION_DPLUS = "check_relation_dplus"


def to_jsonable(value: Any) -> Any:
    """Render witnesses with exact scalars as strings."""
    if isinstance(value, Tensor | Scalar):
        return str(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [to_jsonable(v) for v in value]
    if isinstance(value, Enum):
        return value.value
    return value


@dataclass
class CheckReport:
    """Result of one check.

    Attributes:
        name: 체크 이름 (CheckType 값 또는 implication:<...>)
        verdict: 판정
        parameters: n_max, d, q 등 입력 파라미터
        witness: 실패 시 재현 가능한 반례 (pass 시 빈 dict)
        details: 부가 정보 (정보용 boolean, slot layout 등)
        solution: 해가 존재할 때 그 해 (BK condition 2 의 A)
        notes: 사람이 읽는 메모
        timing: 실행 시간; 결정론 비교에서 제외
    """

    name: str
    verdict: Verdict
    parameters: dict[str, Any] = field(default_factory=dict)
    witness: dict[str, Any] = field(default_factory=dict)
    details: dict[str, Any] = field(default_factory=dict)
    solution: dict[str, Any] | None = None
    notes: list[str] = field(default_factory=list)
    timing: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    @property
    def failed(self) -> bool:
        return self.verdict in (Verdict.FAIL, Verdict.UNSOUND)

    @property
    def skipped(self) -> bool:
        return self.verdict in (Verdict.SKIPPED, Verdict.SKIPPED_RESOURCE)

    def to_dict(self, include_timing: bool = True) -> dict[str, Any]:
        data: dict[str, Any] = {
            "name": self.name,
            "verdict": self.verdict.value,
            "parameters": to_jsonable(self.parameters),
            "witness": to_jsonable(self.witness),
            "details": to_jsonable(self.details),
            "notes": list(self.notes),
        }
        if self.solution is not None:
            data["solution"] = to_jsonable(self.solution)
        if include_timing:
            data["timing"] = dict(self.timing)
        return data


class BaseCheck(ABC):
    """Base class for checks.

    Subclasses implement `evaluate`; `run` adds timing, the resource-skip
    policy, the symbolic note and logging.
    """

    def __init__(self, check_type: CheckType):
        """Initialize check.

        Args:
            check_type: 체크 종류
        """
        self.check_type = check_type

    @property
    def name(self) -> str:
        return self.check_type.value

    @abstractmethod
    def evaluate(self, ts: TwistSystem, n_max: int) -> CheckReport:
        """Run the check proper.

        Args:
            ts: 트위스트 시스템
            n_max: degree bound (degree 무관한 체크는 무시)

        Returns:
            CheckReport with verdict and witness
        """
        pass

    def report(self, verdict: Verdict, **kwargs: Any) -> CheckReport:
        return CheckReport(self.name, verdict, **kwargs)

    def run(self, ts: TwistSystem, n_max: int) -> CheckReport:
        start = time.perf_counter()
        try:
            result = self.evaluate(ts, n_max)
        except ResourceLimitError as e:
            logger.warning(f"{self.name} skipped: {e}")
            result = self.report(
                Verdict.SKIPPED_RESOURCE,
                details={
                    "resource": e.resource,
                    "limit": e.limit,
                    "requested": e.requested,
                },
                notes=[str(e)],
            )
        result.parameters.setdefault("d", ts.dim)
        if result.passed and ts.uses_parameter:
            result.notes.append(SYMBOLIC_NOTE)
        result.timing["seconds"] = time.perf_counter() - start
        if result.passed:
            logger.info(f"✓ {self.name} passed")
        elif result.failed:
            logger.info(f"✗ {self.name} failed: {result.witness}")
        return result
