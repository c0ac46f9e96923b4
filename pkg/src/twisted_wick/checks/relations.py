"""Commutation relations of the operator families.

    a_i a⁺_j − Σ c_{i,j,k,l} a⁺_k a_l = δ_ij      on TE (no hypotheses)
    d_i d_j − Σ b̃_{i,j,k,l} d_k d_l = 0          on A = TE/J
    d⁺_i d⁺_j − Σ b_{i,j,k,l} d⁺_k d⁺_l = 0      on A = TE/J

The quotient relations need d to be well defined and π*-invariance, so they
report `skipped` unless both checks pass.
"""

import logging
from collections.abc import Callable, Mapping
from typing import Any

from twisted_wick.checks.base import BaseCheck, CheckReport, CheckType, Verdict
from twisted_wick.checks.consistency import (
    IdealPreservedCheck,
    PiStarCheck,
    prefixed,
)
from twisted_wick.contraction import ContractionEngine
from twisted_wick.quotient import check_dimension, quotient_algebra
from twisted_wick.scalar import ONE
from twisted_wick.tensorspace import Signature, Tensor, TwoSlotMap, iter_words
from twisted_wick.twist import TwistSystem

logger = logging.getLogger(__name__)

Operator = Callable[[int, Tensor], Tensor]


def _twisted_commutators(
    op: Operator, m: TwoSlotMap, rep: Tensor
) -> tuple[tuple[int, int], Tensor] | None:
    """First (i, j) with op_i op_j − Σ m_{i,j,k,l} op_k op_l ≠ 0 on rep."""
    d = m.dim
    first = {l: op(l, rep) for l in range(1, d + 1)}
    second = {
        (k, l): op(k, first[l]) for k in range(1, d + 1) for l in range(1, d + 1)
    }
    for i, j in iter_words(d, 2):
        value = second[(i, j)]
        for (k, l), coeff in m.image(i, j).items():
            value = value - second[(k, l)].scale(coeff)
        if value:
            return (i, j), value
    return None


def unmet_prerequisites(
    ts: TwistSystem,
    n_max: int,
    prerequisites: Mapping[str, CheckReport] | None = None,
) -> list[str]:
    """Names and verdicts of the well-definedness checks that did not pass.

    Reports already computed by the suite are reused; missing ones are run.
    """
    reports = dict(prerequisites or {})
    unmet = []
    for check in (IdealPreservedCheck(), PiStarCheck()):
        report = reports.get(check.name) or check.run(ts, n_max)
        if not report.passed:
            unmet.append(f"{check.name}: {report.verdict.value}")
    return unmet


class JSWRelationCheck(BaseCheck):
    """a_i a⁺_j(y) − Σ c_{i,j,k,l} a⁺_k a_l(y) = δ_ij y for words y up to n_max.

    Also compares the direct-sum and Leibniz contractions on every e_i⊗f_j⊗y.
    """

    def __init__(self) -> None:
        super().__init__(CheckType.RELATION_JSW)

    def evaluate(self, ts: TwistSystem, n_max: int) -> CheckReport:
        d = ts.dim
        params = {"n_max": n_max}
        eng = ContractionEngine(ts, degree_cap=n_max + 2)
        for n in range(n_max + 1):
            check_dimension(d, n + 2, "E*⊗E^(n+1)")
            signature = Signature.covariant(n)
            for word in iter_words(d, n):
                y = Tensor._trusted(d, signature, {word: ONE})
                lowered = (
                    {l: eng.annihilate(l, y) for l in range(1, d + 1)} if n else {}
                )
                for i, j in iter_words(d, 2):
                    witness = self._check_pair(ts, eng, y, lowered, i, j)
                    if witness:
                        return self.report(
                            Verdict.FAIL, parameters=params, witness=witness
                        )
        return self.report(Verdict.PASS, parameters=params)

    @staticmethod
    def _check_pair(
        ts: TwistSystem,
        eng: ContractionEngine,
        y: Tensor,
        lowered: dict[int, Tensor],
        i: int,
        j: int,
    ) -> dict[str, Any]:
        lifted = eng.create(j, y)
        value = eng.annihilate(i, lifted)
        via_leibniz = eng.contract_via_leibniz(prefixed(lifted, i), 1)
        if value != via_leibniz:
            return {
                "kind": "leibniz_mismatch",
                "i": i,
                "j": j,
                "word": y,
                "difference": value - via_leibniz,
            }
        for (k, l), coeff in ts.C.image(i, j).items():
            if l in lowered:
                value = value - eng.create(k, lowered[l]).scale(coeff)
        expected = y if i == j else Tensor.zero(y.dim, y.signature)
        if value != expected:
            return {
                "kind": "commutator",
                "i": i,
                "j": j,
                "word": y,
                "difference": value - expected,
            }
        return {}


class DDRelationCheck(BaseCheck):
    """d_i d_j − Σ b̃_{i,j,k,l} d_k d_l = 0 on representatives of degree 2..n_max."""

    def __init__(self, prerequisites: Mapping[str, CheckReport] | None = None):
        super().__init__(CheckType.RELATION_DD)
        self.prerequisites = prerequisites

    def evaluate(self, ts: TwistSystem, n_max: int) -> CheckReport:
        params = {"n_max": n_max}
        if n_max < 2:
            return self.report(
                Verdict.SKIPPED, parameters=params, notes=["needs n_max >= 2"]
            )
        unmet = unmet_prerequisites(ts, n_max, self.prerequisites)
        if unmet:
            return self.report(
                Verdict.SKIPPED,
                parameters=params,
                details={"unmet": unmet},
                notes=["d is not known to be well defined"],
            )
        algebra = quotient_algebra(ts)
        for n in range(2, n_max + 1):
            for rep in algebra.level(n).basis():
                found = _twisted_commutators(algebra.annihilate, ts.Btilde, rep)
                if found:
                    (i, j), value = found
                    return self.report(
                        Verdict.FAIL,
                        parameters=params,
                        witness={
                            "degree": n,
                            "i": i,
                            "j": j,
                            "representative": rep,
                            "value": value,
                        },
                    )
        return self.report(Verdict.PASS, parameters=params)


class DPlusRelationCheck(BaseCheck):
    """d⁺_i d⁺_j − Σ b_{i,j,k,l} d⁺_k d⁺_l = 0 on representatives up to n_max−2."""

    def __init__(self, prerequisites: Mapping[str, CheckReport] | None = None):
        super().__init__(CheckType.RELATION_DPLUS)
        self.prerequisites = prerequisites

    def evaluate(self, ts: TwistSystem, n_max: int) -> CheckReport:
        params = {"n_max": n_max}
        if n_max < 2:
            return self.report(
                Verdict.SKIPPED, parameters=params, notes=["needs n_max >= 2"]
            )
        unmet = unmet_prerequisites(ts, n_max, self.prerequisites)
        if unmet:
            return self.report(
                Verdict.SKIPPED,
                parameters=params,
                details={"unmet": unmet},
                notes=["d is not known to be well defined"],
            )
        algebra = quotient_algebra(ts)
        for n in range(n_max - 1):
            for rep in algebra.level(n).basis():
                found = _twisted_commutators(algebra.create, ts.B, rep)
                if found:
                    (i, j), value = found
                    return self.report(
                        Verdict.FAIL,
                        parameters=params,
                        witness={
                            "degree": n,
                            "i": i,
                            "j": j,
                            "representative": rep,
                            "value": value,
                        },
                    )
        return self.report(Verdict.PASS, parameters=params)


def check_relation_jsw(ts: TwistSystem, n_max: int) -> CheckReport:
    return JSWRelationCheck().run(ts, n_max)


def check_relation_dd(
    ts: TwistSystem,
    n_max: int,
    prerequisites: Mapping[str, CheckReport] | None = None,
) -> CheckReport:
    return DDRelationCheck(prerequisites).run(ts, n_max)


def check_relation_dplus(
    ts: TwistSystem,
    n_max: int,
    prerequisites: Mapping[str, CheckReport] | None = None,
) -> CheckReport:
    return DPlusRelationCheck(prerequisites).run(ts, n_max)
