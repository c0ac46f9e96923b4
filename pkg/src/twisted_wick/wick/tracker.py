"""Termination tracking for the normal-ordering rewriter."""

from collections.abc import Iterable
from typing import Any

from twisted_wick.exceptions import RewriteTerminationError


class RewriteTracker:
    """Track the inversion measure over rewrite steps.

    Every rewrite of a·A must produce terms with strictly fewer
    (annihilator, creator-to-its-right) pairs than the word it replaced.
    """

    def __init__(self) -> None:
        """Initialize empty rewrite tracker."""
        self.history: list[int] = []
        self.rewrites = 0
        self.produced_terms = 0

    def record(self, before: int, after: Iterable[int]) -> None:
        """Record one rewrite step.

        Args:
            before: 재작성 전 단어의 inversion 수
            after: 생성된 각 항의 inversion 수

        Raises:
            RewriteTerminationError: measure 가 감소하지 않은 항이 있을 때
        """
        for value in after:
            if value >= before:
                raise RewriteTerminationError(
                    f"rewrite produced measure {value} from {before}"
                )
            self.produced_terms += 1
        self.rewrites += 1
        self.history.append(before)

    def get_statistics(self) -> dict[str, Any]:
        """Get rewrite statistics.

        Returns:
            dict with keys:
                - rewrites: 재작성 횟수
                - produced_terms: 생성된 항 수
                - max_measure: 관측된 최대 inversion 수
                - history: step 별 measure
        """
        return {
            "rewrites": self.rewrites,
            "produced_terms": self.produced_terms,
            "max_measure": max(self.history, default=0),
            "history": list(self.history),
        }
