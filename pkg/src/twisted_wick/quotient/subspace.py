"""Exact subspaces of one tensor space in fully reduced row-echelon form.

Each row is keyed by its pivot, the lexicographically smallest word in its
support, with pivot coefficient 1. No row contains another row's pivot, so a
vector reduces in one pass over the pivots in its support.
"""

import logging
from collections.abc import Hashable, Iterable
from dataclasses import dataclass, field

from twisted_wick.exceptions import SignatureMismatchError
from twisted_wick.scalar import ONE, Scalar
from twisted_wick.tensorspace import Signature, Tensor
from twisted_wick.tensorspace.tensor import Key, accumulate

logger = logging.getLogger(__name__)

Row = dict[Key, Scalar]
Combination = dict[Hashable, Scalar]


@dataclass(frozen=True)
class MembershipResult:
    """Outcome of a membership query.

    Attributes:
        member: remainder 가 0 이면 True
        remainder: echelon basis 에 대한 축약 결과 (witness)
    """

    member: bool
    remainder: Tensor = field(compare=False)

    def __bool__(self) -> bool:
        return self.member


def _axpy(target: Row, a: Scalar, source: Row) -> tuple[list[Key], list[Key]]:
    """target += a·source; returns (appeared, vanished) support keys."""
    appeared: list[Key] = []
    vanished: list[Key] = []
    for key, value in source.items():
        had = key in target
        accumulate(target, key, a * value)
        has = key in target
        if has and not had:
            appeared.append(key)
        elif had and not has:
            vanished.append(key)
    return appeared, vanished


def _combine(target: Combination, a: Scalar, source: Combination) -> None:
    for label, value in source.items():
        total = target.get(label)
        total = a * value if total is None else total + a * value
        if total:
            target[label] = total
        else:
            target.pop(label, None)


class Subspace:
    """Span of tensors with a canonical echelon basis.

    Two equal subspaces have identical row lists, so equality is row equality.
    With source tracking every row also remembers which combination of the
    inserted generators produced it, which turns `solve` into a preimage query.
    """

    __slots__ = ("dim", "signature", "_rows", "_occurs", "_sources")

    def __init__(self, dim: int, signature: Signature, track_sources: bool = False):
        self.dim = dim
        self.signature = signature
        self._rows: dict[Key, Row] = {}
        # word -> pivots of the rows whose support contains it
        self._occurs: dict[Key, set[Key]] = {}
        self._sources: dict[Key, Combination] | None = {} if track_sources else None

    # -- construction ---------------------------------------------------------

    @classmethod
    def span(
        cls, dim: int, signature: Signature, tensors: Iterable[Tensor]
    ) -> "Subspace":
        space = cls(dim, signature)
        for t in tensors:
            space.add(t)
        return space

    @classmethod
    def span_with_sources(
        cls,
        dim: int,
        signature: Signature,
        generators: Iterable[tuple[Hashable, Tensor]],
    ) -> "Subspace":
        """Span labelled generators, keeping preimages for `solve`."""
        space = cls(dim, signature, track_sources=True)
        for label, t in generators:
            space.add(t, source=label)
        return space

    def _require_signature(self, t: Tensor) -> None:
        if t.signature != self.signature or t.dim != self.dim:
            raise SignatureMismatchError(
                f"tensor in {t.signature} (d={t.dim}) does not live in "
                f"{self.signature} (d={self.dim})",
                left=self.signature,
                right=t.signature,
            )

    def _reduce_row(self, v: Row, comb: Combination | None) -> None:
        hits = [p for p in v if p in self._rows]
        for p in hits:
            a = -v[p]
            _axpy(v, a, self._rows[p])
            if comb is not None and self._sources is not None:
                _combine(comb, a, self._sources[p])

    def add(self, t: Tensor, source: Hashable | None = None) -> bool:
        """Insert t; returns False when t is already in the span."""
        self._require_signature(t)
        v: Row = dict(t.raw_items())
        comb: Combination | None = None
        if self._sources is not None:
            comb = {} if source is None else {source: ONE}
        self._reduce_row(v, comb)
        if not v:
            return False
        pivot = min(v)
        scale = v[pivot].inverse()
        if scale != ONE:
            v = {key: value * scale for key, value in v.items()}
            if comb is not None:
                comb = {label: value * scale for label, value in comb.items()}
        for other in list(self._occurs.get(pivot, ())):
            row = self._rows[other]
            a = -row[pivot]
            appeared, vanished = _axpy(row, a, v)
            for key in appeared:
                self._occurs.setdefault(key, set()).add(other)
            for key in vanished:
                self._occurs[key].discard(other)
            if comb is not None and self._sources is not None:
                _combine(self._sources[other], a, comb)
        self._rows[pivot] = v
        for key in v:
            self._occurs.setdefault(key, set()).add(pivot)
        if comb is not None and self._sources is not None:
            self._sources[pivot] = comb
        return True

    # -- queries --------------------------------------------------------------

    @property
    def rank(self) -> int:
        """Dimension of the subspace (number of echelon rows)."""
        return len(self._rows)

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def ambient_dimension(self) -> int:
        return self.dim ** len(self.signature)

    @property
    def pivots(self) -> list[Key]:
        return sorted(self._rows)

    def rows(self) -> list[Tensor]:
        """Echelon basis in pivot order."""
        return [
            Tensor._trusted(self.dim, self.signature, dict(self._rows[p]))
            for p in self.pivots
        ]

    def reduce(self, t: Tensor) -> Tensor:
        """Canonical remainder of t modulo the subspace."""
        self._require_signature(t)
        v: Row = dict(t.raw_items())
        self._reduce_row(v, None)
        return Tensor._trusted(self.dim, self.signature, v)

    def membership(self, t: Tensor) -> MembershipResult:
        remainder = self.reduce(t)
        return MembershipResult(not remainder, remainder)

    def __contains__(self, t: object) -> bool:
        return isinstance(t, Tensor) and self.membership(t).member

    def solve(self, t: Tensor) -> Combination | None:
        """Generator combination whose span element equals t, or None.

        Only available on subspaces built with source tracking.
        """
        if self._sources is None:
            raise ValueError("solve() needs a subspace built with sources")
        self._require_signature(t)
        v: Row = dict(t.raw_items())
        comb: Combination = {}
        self._reduce_row(v, comb)
        if v:
            return None
        # v = t - Σ rows, so t = Σ rows: flip the accumulated signs
        return {label: -value for label, value in comb.items()}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.signature == other.signature
            and self._rows == other._rows
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Subspace(d={self.dim}, {self.signature}, rank={self.rank})"


def membership(s: Subspace, t: Tensor) -> MembershipResult:
    return s.membership(t)
