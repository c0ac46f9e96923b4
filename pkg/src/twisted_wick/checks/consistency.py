"""Consistency conditions on a twist system.

The first pair (a linear condition and the solvability of C²C¹B² − B¹C²C¹ =
(1 − B¹)A) guarantees that annihilators preserve the ideal J. The second pair
(a braid relation between B̃ and C plus the double-contraction condition)
guarantees π*-invariance of the double contraction.
"""

import logging
from typing import Any

from twisted_wick.checks.base import BaseCheck, CheckReport, CheckType, Verdict
from twisted_wick.contraction import ContractionEngine
from twisted_wick.quotient import Subspace, check_dimension, quotient_algebra
from twisted_wick.scalar import ONE, Scalar
from twisted_wick.tensorspace import (
    E,
    E_STAR,
    Signature,
    Tensor,
    TwoSlotMap,
    Variance,
    apply_two_slot,
    iter_words,
)
from twisted_wick.tensorspace.tensor import Key, accumulate
from twisted_wick.twist import TwistSystem

logger = logging.getLogger(__name__)

EE = Signature((E, E))


def _basis(d: int, signature: Signature, word: Key) -> Tensor:
    return Tensor._trusted(d, signature, {word: ONE})


def _one_minus(m: TwoSlotMap, t: Tensor, pos: int) -> Tensor:
    """(1 − m⁽ᵖᵒˢ⁾) t."""
    return t - apply_two_slot(m, t, pos)


def prefixed(t: Tensor, i: int, variance: Variance = E_STAR) -> Tensor:
    """x_i ⊗ t for a basis vector of the given variance."""
    terms = {(i, *key): value for key, value in t.raw_items()}
    return Tensor._trusted(t.dim, Signature((variance,)) + t.signature, terms)


def c_on_covariant(ts: TwistSystem) -> TwoSlotMap:
    """C read on E⊗E: f_i⊗f_j ↦ Σ c_{i,j,k,l} f_k⊗f_l."""
    return TwoSlotMap.from_entries(ts.dim, (E, E), (E, E), ts.C.entries(), "C_EE")


class WZCheck(BaseCheck):
    """Linear condition: ct_2(e_i ⊗ (1−B)(f_j⊗f_k)) = 0 for all i, j, k.

    Its matrix is the product (1−B)(1+C̃) with entries
    Σ_{l,m} (δ_jl δ_km − b_{j,k,l,m})(δ_il δ_mr + c̃_{r,i,m,l}).
    """

    def __init__(self) -> None:
        super().__init__(CheckType.WZ)

    def evaluate(self, ts: TwistSystem, n_max: int) -> CheckReport:
        d = ts.dim
        eng = ContractionEngine(ts, degree_cap=3)
        witness: dict[str, Any] = {}
        for word in iter_words(d, 2):
            v = _one_minus(ts.B, _basis(d, EE, word), 1)
            image: dict[Key, Scalar] = {}
            for i in range(1, d + 1):
                if not v:
                    break
                row = eng.contract(prefixed(v, i), 1)
                for (r,), value in row.raw_items():
                    accumulate(image, (i, r), value)
            if image:
                witness = {
                    "word": Tensor._trusted(d, EE, {word: ONE}),
                    "indices": list(word),
                    "image": Tensor._trusted(d, EE, image),
                }
                break
        details = {
            "containment_form": self._containment(ts),
            "operator_order_form": self._operator_order(ts),
        }
        if witness:
            return self.report(Verdict.FAIL, witness=witness, details=details)
        return self.report(Verdict.PASS, details=details)

    @staticmethod
    def _containment(ts: TwistSystem) -> bool:
        """Im(1−B) ⊆ Ker(1+C) with C read on E⊗E."""
        c_ee = c_on_covariant(ts)
        for word in iter_words(ts.dim, 2):
            v = _one_minus(ts.B, _basis(ts.dim, EE, word), 1)
            if v + apply_two_slot(c_ee, v, 1):
                return False
        return True

    @staticmethod
    def _operator_order(ts: TwistSystem) -> bool:
        """(1−B)∘(1+C̃) = 0 read as composition of operators."""
        for word in iter_words(ts.dim, 2):
            u = _basis(ts.dim, EE, word)
            u = u + apply_two_slot(ts.Ctilde, u, 1)
            if _one_minus(ts.B, u, 1):
                return False
        return True


class BKCondition2Check(BaseCheck):
    """Solvability of C⁽²⁾C⁽¹⁾B⁽²⁾ − B⁽¹⁾C⁽²⁾C⁽¹⁾ = (1 − B⁽¹⁾)A.

    L maps E*⊗E⊗E to E⊗E⊗E*. Every L(w) must lie in the span of the
    generators (1 − B⁽¹⁾)(f_i⊗f_j⊗e_k); the tracked preimages give A.
    """

    def __init__(self) -> None:
        super().__init__(CheckType.BK_CONDITION2)

    @staticmethod
    def operator_l(ts: TwistSystem, t: Tensor) -> Tensor:
        left = apply_two_slot(ts.B, t, 2)
        left = apply_two_slot(ts.C, left, 1)
        left = apply_two_slot(ts.C, left, 2)
        right = apply_two_slot(ts.C, t, 1)
        right = apply_two_slot(ts.C, right, 2)
        right = apply_two_slot(ts.B, right, 1)
        return left - right

    def evaluate(self, ts: TwistSystem, n_max: int) -> CheckReport:
        d = ts.dim
        check_dimension(d, 3, "E*⊗E⊗E")
        domain = Signature((E_STAR, E, E))
        target = Signature((E, E, E_STAR))
        image = Subspace.span_with_sources(
            d,
            target,
            (
                (word, _one_minus(ts.B, _basis(d, target, word), 1))
                for word in iter_words(d, 3)
            ),
        )
        solution: dict[str, Tensor] = {}
        nonzero = 0
        for word in iter_words(d, 3):
            w = _basis(d, domain, word)
            lw = self.operator_l(ts, w)
            if not lw:
                continue
            nonzero += 1
            combination = image.solve(lw)
            if combination is None:
                return self.report(
                    Verdict.FAIL,
                    witness={
                        "word": w,
                        "indices": list(word),
                        "L": lw,
                        "remainder": image.reduce(lw),
                    },
                    details={"nonzero_columns": nonzero},
                )
            terms: dict[Key, Scalar] = {}
            for label, value in combination.items():
                accumulate(terms, label, value)  # type: ignore[arg-type]
            if terms:
                solution[str(w)] = Tensor._trusted(d, target, terms)
        notes = [] if nonzero else ["L = 0; A = 0 solves the condition"]
        return self.report(
            Verdict.PASS,
            details={"nonzero_columns": nonzero},
            solution=solution,
            notes=notes,
        )


class IdealPreservedCheck(BaseCheck):
    """a_{n,i}(J_n) ⊆ J_{n−1} for 2 ≤ n ≤ n_max; J₁ = {0}."""

    def __init__(self) -> None:
        super().__init__(CheckType.IDEAL_PRESERVED)

    def evaluate(self, ts: TwistSystem, n_max: int) -> CheckReport:
        params = {"n_max": n_max}
        algebra = quotient_algebra(ts)
        if n_max < 2:
            return self.report(
                Verdict.SKIPPED,
                parameters=params,
                notes=["needs n_max >= 2"],
            )
        eng = algebra.engine()
        for n in range(2, n_max + 1):
            lower = algebra.level(n - 1)
            for v in algebra.level(n).ideal.rows():
                for i in range(1, ts.dim + 1):
                    result = lower.is_zero(eng.annihilate(i, v))
                    if not result:
                        algebra.record_well_definedness(
                            "d", False, n, f"a_{i}(J_{n}) not inside J_{n - 1}"
                        )
                        return self.report(
                            Verdict.FAIL,
                            parameters=params,
                            witness={
                                "degree": n,
                                "index": i,
                                "ideal_element": v,
                                "remainder": result.remainder,
                            },
                        )
        algebra.record_well_definedness("d", True, n_max)
        return self.report(Verdict.PASS, parameters=params)


class YBECheck(BaseCheck):
    """B̃⁽²⁾C⁽¹⁾C⁽²⁾ = C⁽¹⁾C⁽²⁾B̃⁽¹⁾ on E*⊗E*⊗E."""

    def __init__(self) -> None:
        super().__init__(CheckType.YBE)

    @staticmethod
    def sides(ts: TwistSystem, t: Tensor) -> tuple[Tensor, Tensor]:
        left = apply_two_slot(ts.C, t, 2)
        left = apply_two_slot(ts.C, left, 1)
        left = apply_two_slot(ts.Btilde, left, 2)
        right = apply_two_slot(ts.Btilde, t, 1)
        right = apply_two_slot(ts.C, right, 2)
        right = apply_two_slot(ts.C, right, 1)
        return left, right

    def evaluate(self, ts: TwistSystem, n_max: int) -> CheckReport:
        d = ts.dim
        check_dimension(d, 3, "E*⊗E*⊗E")
        domain = Signature((E_STAR, E_STAR, E))
        for word in iter_words(d, 3):
            w = _basis(d, domain, word)
            left, right = self.sides(ts, w)
            if left != right:
                return self.report(
                    Verdict.FAIL,
                    witness={
                        "word": w,
                        "indices": list(word),
                        "difference": left - right,
                    },
                )
        return self.report(Verdict.PASS)


class DoubleContractionCheck(BaseCheck):
    """[ev⁽¹⁾ev⁽ᵏ⁾C⁽ᵏ⁻¹⁾…C⁽²⁾ + ev⁽ᵏ⁻²⁾C⁽ᵏ⁻³⁾…C⁽¹⁾ev⁽²⁾](1 − B̃⁽¹⁾) = 0.

    For each k in 3..n_max+1 the domain is E*⊗E*⊗E^{⊗(k−1)}; both operator
    words land in E^{⊗(k−3)}.
    """

    def __init__(self) -> None:
        super().__init__(CheckType.DOUBLE_CONTRACTION)

    @staticmethod
    def layout(k: int) -> str:
        return f"k={k}: E*⊗E*⊗E^{k - 1} -> E^{k - 3}"

    @staticmethod
    def operator(eng: ContractionEngine, t: Tensor, k: int) -> Tensor:
        first = eng.thread(t, 2, k - 2)
        first = eng.evaluate_at(first, k)
        first = eng.evaluate_at(first, 1)
        second = eng.evaluate_at(t, 2)
        second = eng.thread(second, 1, k - 3)
        second = eng.evaluate_at(second, k - 2)
        return first + second

    def evaluate(self, ts: TwistSystem, n_max: int) -> CheckReport:
        d = ts.dim
        ks = list(range(3, n_max + 2))
        params: dict[str, Any] = {"n_max": n_max}
        details = {"layout": [self.layout(k) for k in ks]}
        if not ks:
            return self.report(
                Verdict.SKIPPED,
                parameters=params,
                details=details,
                notes=["needs n_max >= 2"],
            )
        eng = ContractionEngine(ts, degree_cap=n_max + 2)
        for k in ks:
            check_dimension(d, k + 1, "E*⊗E*⊗E^(k-1)")
            domain = Signature((E_STAR, E_STAR)) + Signature.covariant(k - 1)
            for word in iter_words(d, k + 1):
                w = _basis(d, domain, word)
                t = _one_minus(ts.Btilde, w, 1)
                if not t:
                    continue
                value = self.operator(eng, t, k)
                if value:
                    return self.report(
                        Verdict.FAIL,
                        parameters=params,
                        details=details,
                        witness={
                            "k": k,
                            "word": w,
                            "indices": list(word),
                            "value": value,
                        },
                    )
        return self.report(Verdict.PASS, parameters=params, details=details)


class PiStarCheck(BaseCheck):
    """ct ct(J₂* ⊗ E^{⊗n}) ⊆ J_{n−2} for 2 ≤ n ≤ n_max; J₀ = J₁ = {0}."""

    def __init__(self) -> None:
        super().__init__(CheckType.PI_STAR)

    @staticmethod
    def double_contraction(eng: ContractionEngine, u: Tensor, y: Tensor) -> Tensor:
        """ct⁽¹⁾ ct⁽²⁾ (u ⊗ y) for u over E*⊗E*."""
        terms: dict[Key, Scalar] = {}
        for left, a in u.raw_items():
            for right, b in y.raw_items():
                accumulate(terms, left + right, a * b)
        x = Tensor._trusted(u.dim, u.signature + y.signature, terms)
        return eng.contract(eng.contract(x, 2), 1)

    def evaluate(self, ts: TwistSystem, n_max: int) -> CheckReport:
        d = ts.dim
        params = {"n_max": n_max}
        if n_max < 2:
            return self.report(
                Verdict.SKIPPED, parameters=params, notes=["needs n_max >= 2"]
            )
        algebra = quotient_algebra(ts)
        dual = algebra.dual_ideal().rows()
        eng = ContractionEngine(ts, degree_cap=n_max + 2)
        for n in range(2, n_max + 1):
            check_dimension(d, n + 2, "E*⊗E*⊗E^n")
            lower = algebra.level(n - 2)
            for u in dual:
                for word in iter_words(d, n):
                    y = Tensor.f(d, *word)
                    result = lower.is_zero(self.double_contraction(eng, u, y))
                    if not result:
                        return self.report(
                            Verdict.FAIL,
                            parameters=params,
                            witness={
                                "degree": n,
                                "dual_element": u,
                                "word": y,
                                "remainder": result.remainder,
                            },
                        )
        return self.report(Verdict.PASS, parameters=params)


def check_wz(ts: TwistSystem) -> CheckReport:
    return WZCheck().run(ts, 0)


def check_bk_condition2(ts: TwistSystem) -> CheckReport:
    return BKCondition2Check().run(ts, 0)


def check_ideal_preserved(ts: TwistSystem, n_max: int) -> CheckReport:
    return IdealPreservedCheck().run(ts, n_max)


def check_ybe(ts: TwistSystem) -> CheckReport:
    return YBECheck().run(ts, 0)


def check_t43_condition2(ts: TwistSystem, n_max: int) -> CheckReport:
    """Double-contraction condition on E*⊗E*⊗E^{⊗(k−1)} for k in 3..n_max+1.

    The degree range extends past n_max by one so that every pair of
    contractions reaching degree n_max is covered. The report lists the slot
    layout of each k under `details["layout"]`.
    """
    return DoubleContractionCheck().run(ts, n_max)


check_double_contraction = check_t43_condition2


def check_pi_star_invariance(ts: TwistSystem, n_max: int) -> CheckReport:
    return PiStarCheck().run(ts, n_max)
