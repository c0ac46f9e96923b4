"""The graded ideal J, its quotient A = TE/J and the operators d_i, d⁺_j.

J₂ = Im(1−B), J_n = E⊗J_{n−1} + J_{n−1}⊗E; dually J₂* = Im(1−B̃).
Coset representatives are remainders modulo the echelon basis of J_n, so the
complement is spanned by the non-pivot words.
"""

import logging
import threading
from dataclasses import dataclass
from functools import lru_cache

from twisted_wick.config import get_config
from twisted_wick.contraction import ContractionEngine
from twisted_wick.exceptions import NotWellDefinedError, ResourceLimitError, SlotError
from twisted_wick.quotient.subspace import MembershipResult, Subspace
from twisted_wick.scalar import ONE, Scalar
from twisted_wick.tensorspace import (
    E_STAR,
    Signature,
    Tensor,
    TwoSlotMap,
    iter_words,
)
from twisted_wick.tensorspace.tensor import Key, accumulate
from twisted_wick.twist import TwistSystem

logger = logging.getLogger(__name__)


def check_dimension(d: int, n: int, what: str = "E^n") -> int:
    """Ambient dimension d^n, refused above the configured cap.

    Raises:
        ResourceLimitError: d^n > dimension_cap
    """
    size = d**n
    cap = get_config().dimension_cap
    if size > cap:
        raise ResourceLimitError(
            f"{what} with d={d}, n={n} has dimension {size} > cap {cap}",
            resource="dimension",
            limit=cap,
            requested=size,
        )
    return size


def _relation_image(m: TwoSlotMap, signature: Signature) -> list[Tensor]:
    """Columns (1−m)(x_i⊗x_j) for all i, j."""
    d = m.dim
    images = []
    for i, j in iter_words(d, 2):
        acc: dict[Key, Scalar] = {(i, j): ONE}
        for key, value in m.image(i, j).items():
            accumulate(acc, key, -value)
        if acc:
            images.append(Tensor._trusted(d, signature, acc))
    return images


@dataclass(frozen=True)
class QuotientLevel:
    """A^{⊙n} = E^{⊗n}/J_n with canonical representatives.

    Attributes:
        degree: n
        ideal: J_n 의 echelon basis
    """

    degree: int
    ideal: Subspace

    @property
    def ambient_dimension(self) -> int:
        return self.ideal.ambient_dimension

    @property
    def ideal_dimension(self) -> int:
        return self.ideal.rank

    @property
    def dimension(self) -> int:
        return self.ambient_dimension - self.ideal.rank

    def project(self, t: Tensor) -> Tensor:
        """π_n: canonical representative of t + J_n."""
        if t.signature != self.ideal.signature:
            raise SlotError(
                f"expected a tensor over E^{self.degree}, got {t.signature}"
            )
        return self.ideal.reduce(t)

    def is_zero(self, t: Tensor) -> MembershipResult:
        return self.ideal.membership(t)

    def basis(self) -> list[Tensor]:
        """Basis words not used as pivots, in lexicographic order."""
        d = self.ideal.dim
        pivots = set(self.ideal.pivots)
        return [
            Tensor.f(d, *word)
            for word in iter_words(d, self.degree)
            if word not in pivots
        ]


@dataclass(frozen=True)
class DimensionRow:
    """One row of the quotient dimension table."""

    degree: int
    ambient: int
    ideal: int
    quotient: int


class QuotientAlgebra:
    """Lazily built levels of A = TE/J for one twist system.

    Levels are memoized; the cache is shared by worker threads.
    """

    def __init__(self, ts: TwistSystem):
        self.ts = ts
        self._levels: dict[int, QuotientLevel] = {}
        self._dual: Subspace | None = None
        self._lock = threading.RLock()
        # operator -> (lowest failing degree, reason)
        self._failures: dict[str, tuple[int, str]] = {}

    def engine(self) -> ContractionEngine:
        return ContractionEngine(self.ts)

    def level(self, n: int) -> QuotientLevel:
        """A^{⊙n}; J_0 = J_1 = {0}.

        Raises:
            ResourceLimitError: d^n 가 dimension cap 초과
        """
        if n < 0:
            raise SlotError(f"degree must be >= 0, got {n}")
        d = self.ts.dim
        check_dimension(d, n)
        with self._lock:
            cached = self._levels.get(n)
            if cached is not None:
                return cached
            signature = Signature.covariant(n)
            if n <= 1:
                ideal = Subspace(d, signature)
            elif n == 2:
                image = _relation_image(self.ts.B, signature)
                ideal = Subspace.span(d, signature, image)
            else:
                ideal = self._extend(self.level(n - 1).ideal, signature)
            lvl = QuotientLevel(n, ideal)
            self._levels[n] = lvl
            logger.debug(
                f"J_{n} for {self.ts.name or 'system'}: "
                f"rank {ideal.rank} of {ideal.ambient_dimension}"
            )
            return lvl

    def _extend(self, previous: Subspace, signature: Signature) -> Subspace:
        d = self.ts.dim
        ideal = Subspace(d, signature)
        for row in previous.rows():
            items = list(row.raw_items())
            for i in range(1, d + 1):
                ideal.add(
                    Tensor._trusted(d, signature, {(i, *k): v for k, v in items})
                )
                ideal.add(
                    Tensor._trusted(d, signature, {(*k, i): v for k, v in items})
                )
        return ideal

    def dual_ideal(self) -> Subspace:
        """J₂* = Im(1−B̃) inside E*⊗E*."""
        with self._lock:
            if self._dual is None:
                signature = Signature((E_STAR, E_STAR))
                self._dual = Subspace.span(
                    self.ts.dim, signature, _relation_image(self.ts.Btilde, signature)
                )
            return self._dual

    # -- well-definedness bookkeeping -----------------------------------------

    def record_well_definedness(
        self, operator: str, ok: bool, degree: int, reason: str = ""
    ) -> None:
        """Remember a well-definedness outcome, e.g. for operator 'd'.

        A pass verified up to `degree` only clears a failure found at or below
        that degree. Of several failures the lowest degree is kept.
        """
        with self._lock:
            recorded = self._failures.get(operator)
            if ok:
                if recorded is not None and recorded[0] <= degree:
                    del self._failures[operator]
            elif recorded is None or degree < recorded[0]:
                self._failures[operator] = (degree, reason or "check failed")

    def failure(self, operator: str) -> str | None:
        recorded = self._failures.get(operator)
        return None if recorded is None else recorded[1]

    def failure_degree(self, operator: str) -> int | None:
        recorded = self._failures.get(operator)
        return None if recorded is None else recorded[0]

    # -- quotient operators ---------------------------------------------------

    def annihilate(self, i: int, t: Tensor) -> Tensor:
        """d_{n,i} = π_{n−1} ∘ a_{n,i} on a representative.

        Raises:
            NotWellDefinedError: ideal 보존 체크가 실패로 기록된 시스템
        """
        reason = self.failure("d")
        if reason is not None:
            raise NotWellDefinedError(
                f"d_i is not well defined on {self.ts.name or 'this system'}: {reason}",
                operator="d",
            )
        image = self.engine().annihilate(i, t)
        if t.degree == 0:
            return image
        return self.level(t.degree - 1).project(image)

    def create(self, j: int, t: Tensor) -> Tensor:
        """d⁺_{n,j} = π_{n+1} ∘ a⁺_{n,j}, well defined as E⊗J_n ⊆ J_{n+1}."""
        image = self.engine().create(j, t)
        return self.level(t.degree + 1).project(image)

    def dimension_table(self, n_max: int) -> list[DimensionRow]:
        rows = []
        for n in range(n_max + 1):
            lvl = self.level(n)
            rows.append(
                DimensionRow(
                    n, lvl.ambient_dimension, lvl.ideal_dimension, lvl.dimension
                )
            )
        return rows


@lru_cache(maxsize=64)
def quotient_algebra(ts: TwistSystem) -> QuotientAlgebra:
    """Shared QuotientAlgebra per twist system."""
    return QuotientAlgebra(ts)


def ideal_level(ts: TwistSystem, n: int) -> Subspace:
    """Echelon basis of J_n (n >= 2)."""
    if n < 2:
        raise SlotError(f"ideal levels start at n=2, got {n}")
    return quotient_algebra(ts).level(n).ideal


def project(lvl: QuotientLevel, t: Tensor) -> Tensor:
    return lvl.project(t)


def quotient_annihilate(ts: TwistSystem, i: int, t: Tensor) -> Tensor:
    return quotient_algebra(ts).annihilate(i, t)


def quotient_create(ts: TwistSystem, j: int, t: Tensor) -> Tensor:
    return quotient_algebra(ts).create(j, t)


def dimension_table(ts: TwistSystem, n_max: int) -> list[DimensionRow]:
    """n → (dⁿ, dim J_n, dim A^{⊙n}) for n = 0..n_max."""
    return quotient_algebra(ts).dimension_table(n_max)
