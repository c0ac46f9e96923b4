"""C-twisted contraction and the partial creation/annihilation operators.

    ct_n = Σ_{k=1}^{n} (1_{k-1} ⊗ ev ⊗ 1_{n-k}) C^{(k-1)} ... C^{(1)}

The dual vector in slot `pos` is threaded rightward through C and paired with
each following E factor in turn. Prefix slots (E or E*) are left untouched,
which gives ct_n^{(k)} and the E*-prefixed variants in one routine.
"""

import logging
from collections.abc import Callable

from twisted_wick.config import get_config
from twisted_wick.exceptions import ResourceLimitError, SlotError
from twisted_wick.scalar import Scalar
from twisted_wick.tensorspace import (
    E,
    E_STAR,
    Signature,
    Tensor,
    TwoSlotMap,
    apply_two_slot,
)
from twisted_wick.twist import TwistSystem

logger = logging.getLogger(__name__)


class ContractionEngine:
    """Contractions and operators a_{n,i}, a⁺_{n,j} for one twist system.

    Example:
        eng = ContractionEngine(builtin_preset("boson", 2))
        eng.annihilate(1, Tensor.f(2, 1, 2))   # -> f2
    """

    def __init__(self, ts: TwistSystem, degree_cap: int | None = None):
        """Initialize engine.

        Args:
            ts: 트위스트 시스템
            degree_cap: 허용 최대 signature 길이 (None 이면 config 값)
        """
        cap = get_config().max_word_length if degree_cap is None else degree_cap
        if cap < 1:
            raise ResourceLimitError(
                f"degree cap must be >= 1, got {cap}", resource="word_length", limit=cap
            )
        self.ts = ts
        self.degree_cap = cap
        self.ev = TwoSlotMap.evaluation(ts.dim)

    # -- slot bookkeeping -------------------------------------------------------

    def _check_degree(self, length: int) -> None:
        if length > self.degree_cap:
            raise ResourceLimitError(
                f"degree {length} exceeds cap {self.degree_cap}",
                resource="word_length",
                limit=self.degree_cap,
                requested=length,
            )

    def _run_length(self, t: Tensor, pos: int, n: int | None) -> int:
        self._check_degree(len(t.signature))
        if t.signature[pos] is not E_STAR:
            raise SlotError(
                f"slot {pos} of {t.signature} must be E* for a contraction",
                position=pos,
                expected=E_STAR,
                found=t.signature[pos],
            )
        run = t.signature.covariant_run(pos + 1)
        if run == 0:
            raise SlotError(
                f"no E slots follow slot {pos} in {t.signature}", position=pos + 1
            )
        if n is None:
            return run
        if not 1 <= n <= run:
            raise SlotError(
                f"contraction length {n} outside 1..{run} at slot {pos}", position=pos
            )
        return n

    def twist_at(self, t: Tensor, pos: int) -> Tensor:
        """C^{(pos)}: apply C on slots (pos, pos+1)."""
        return apply_two_slot(self.ts.C, t, pos)

    def evaluate_at(
        self, t: Tensor, pos: int, base: TwoSlotMap | None = None
    ) -> Tensor:
        """ct_1^{(pos)}: apply ev (or a given degree-1 map) on (pos, pos+1)."""
        return apply_two_slot(self.ev if base is None else base, t, pos)

    def thread(self, t: Tensor, pos: int, steps: int) -> Tensor:
        """C^{(pos+steps-1)} ... C^{(pos)} t."""
        current = t
        for offset in range(steps):
            current = self.twist_at(current, pos + offset)
        return current

    # -- contractions -------------------------------------------------------------

    def contraction_terms(
        self, t: Tensor, pos: int, n: int | None = None, base: TwoSlotMap | None = None
    ) -> list[Tensor]:
        """Summands ct_1^{(pos+k-1)} C^{(pos+k-2)} ... C^{(pos)} t for k = 1..n."""
        n = self._run_length(t, pos, n)
        terms = [self.evaluate_at(t, pos, base)]
        current = t
        for k in range(2, n + 1):
            current = self.twist_at(current, pos + k - 2)
            terms.append(self.evaluate_at(current, pos + k - 1, base))
        return terms

    def contract(
        self, t: Tensor, pos: int, n: int | None = None, base: TwoSlotMap | None = None
    ) -> Tensor:
        """ct_n^{(pos)} t by the direct-sum formula.

        Args:
            t: 입력 텐서; slot pos 는 E*, 그 뒤로 E 가 최소 1개
            pos: 1-based E* 위치
            n: 소비할 E 개수 (기본: 최대 covariant run)
            base: ev 대신 사용할 degree-1 map (A_1)

        Returns:
            Tensor with one E* and one E slot removed

        Raises:
            SlotError: variance 조건 위반
            ResourceLimitError: degree cap 초과
        """
        n = self._run_length(t, pos, n)
        total = self.evaluate_at(t, pos, base)
        current = t
        for k in range(2, n + 1):
            current = self.twist_at(current, pos + k - 2)
            if not current:
                break
            total = total + self.evaluate_at(current, pos + k - 1, base)
        return total

    def contract_via_leibniz(
        self, t: Tensor, pos: int, n: int | None = None, base: TwoSlotMap | None = None
    ) -> Tensor:
        """ct_n^{(pos)} = ct_1^{(pos)} + ct_{n-1}^{(pos+1)} ∘ C^{(pos)}."""
        n = self._run_length(t, pos, n)
        return self._leibniz(t, pos, n, base)

    def _leibniz(
        self, t: Tensor, pos: int, n: int, base: TwoSlotMap | None
    ) -> Tensor:
        head = self.evaluate_at(t, pos, base)
        if n == 1:
            return head
        threaded = self.twist_at(t, pos)
        if not threaded:
            return head
        return head + self._leibniz(threaded, pos + 1, n - 1, base)

    def generic_recursion(
        self, base: TwoSlotMap
    ) -> Callable[[Tensor, int], Tensor]:
        """The family A_n fixed by A_1 = base and A_n = A_1 + A_{n-1}∘C.

        Raises:
            SlotError: base 가 E*⊗E → C 형태가 아닐 때
        """
        if base.source != (E_STAR, E) or base.target or base.dim != self.ts.dim:
            raise SlotError(
                f"degree-1 map must send E*⊗E to scalars, got {base.source} "
                f"-> {base.target}"
            )

        def family(t: Tensor, pos: int) -> Tensor:
            return self.contract_via_leibniz(t, pos, base=base)

        return family

    # -- creation / annihilation ----------------------------------------------------

    def _require_covariant(self, y: Tensor) -> None:
        if not y.signature.is_covariant:
            raise SlotError(f"expected a tensor over E^n, got {y.signature}")
        if y.dim != self.ts.dim:
            raise SlotError(f"tensor has d={y.dim}, twist system has d={self.ts.dim}")

    def _require_index(self, i: int) -> None:
        if not 1 <= i <= self.ts.dim:
            raise SlotError(f"basis index {i} outside 1..{self.ts.dim}")

    def annihilate(self, i: int, y: Tensor) -> Tensor:
        """a_{n,i}(y) = ct_n^{(1)}(e_i ⊗ y); zero at the scalar level."""
        self._require_covariant(y)
        self._require_index(i)
        n = y.degree
        if n == 0 or not y:
            return Tensor.zero(y.dim, Signature.covariant(max(n - 1, 0)))
        self._check_degree(n + 1)
        lifted: dict[tuple[int, ...], Scalar] = {
            (i, *key): value for key, value in y.raw_items()
        }
        signature = Signature((E_STAR,)) + y.signature
        return self.contract(Tensor._trusted(y.dim, signature, lifted), 1)

    def create(self, j: int, y: Tensor) -> Tensor:
        """a⁺_{n,j}(y) = f_j ⊗ y."""
        self._require_covariant(y)
        self._require_index(j)
        self._check_degree(y.degree + 1)
        lifted = {(j, *key): value for key, value in y.raw_items()}
        return Tensor._trusted(y.dim, Signature((E,)) + y.signature, lifted)


def contract(eng: ContractionEngine, t: Tensor, pos: int) -> Tensor:
    return eng.contract(t, pos)


def contract_via_leibniz(eng: ContractionEngine, t: Tensor, pos: int) -> Tensor:
    return eng.contract_via_leibniz(t, pos)


def annihilate(eng: ContractionEngine, i: int, y: Tensor) -> Tensor:
    return eng.annihilate(i, y)


def create(eng: ContractionEngine, j: int, y: Tensor) -> Tensor:
    return eng.create(j, y)
