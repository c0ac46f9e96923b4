"""Twist systems (B, B̃, C) and the derived C̃."""

import logging
from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction

from twisted_wick.exceptions import (
    DuplicateEntryError,
    IndexOutOfRangeError,
    TwistDefinitionError,
)
from twisted_wick.scalar import Scalar
from twisted_wick.tensorspace import E, E_STAR, TwoSlotMap, Variance

logger = logging.getLogger(__name__)

RawEntry = tuple[int, int, int, int, Scalar | int | Fraction | str]

TENSOR_NAMES = ("B", "Btilde", "C")


@dataclass(frozen=True)
class TwistSystem:
    """The triple (B, B̃, C) over a d-dimensional E.

    Attributes:
        dim: d
        B: E⊗E → E⊗E
        Btilde: E*⊗E* → E*⊗E*
        C: E*⊗E → E⊗E* (elementary twist)
        Ctilde: E⊗E → E⊗E, c̃_{i,j,k,l} = c_{j,l,i,k}
        name: preset 이름 또는 라벨 (비교에서 제외)
    """

    dim: int
    B: TwoSlotMap
    Btilde: TwoSlotMap
    C: TwoSlotMap
    Ctilde: TwoSlotMap
    name: str = field(default="", compare=False)

    @classmethod
    def from_maps(
        cls, B: TwoSlotMap, Btilde: TwoSlotMap, C: TwoSlotMap, name: str = ""
    ) -> "TwistSystem":
        """Assemble from validated maps, deriving C̃."""
        shapes = {
            "B": (B, (E, E), (E, E)),
            "Btilde": (Btilde, (E_STAR, E_STAR), (E_STAR, E_STAR)),
            "C": (C, (E_STAR, E), (E, E_STAR)),
        }
        for label, (m, source, target) in shapes.items():
            if m.source != source or m.target != target:
                raise TwistDefinitionError(
                    f"{label} must map {source} to {target}", tensor=label
                )
            if m.dim != B.dim:
                raise TwistDefinitionError(f"{label} has d={m.dim}", tensor=label)
        return cls(B.dim, B, Btilde, C, derive_ctilde(C), name)

    @property
    def uses_parameter(self) -> bool:
        return any(m.uses_parameter() for m in (self.B, self.Btilde, self.C))

    def tensor(self, label: str) -> TwoSlotMap:
        """Look up B, Btilde or C by name."""
        if label not in TENSOR_NAMES:
            raise TwistDefinitionError(f"unknown tensor {label!r}", tensor=label)
        m: TwoSlotMap = getattr(self, label)
        return m

    def specialize(self, q0: int | Fraction) -> "TwistSystem":
        """Evaluate every entry at q = q0.

        Raises:
            EvaluationPoleError: 어떤 엔트리가 q0 에서 pole 을 가질 때
        """

        def at(value: Scalar) -> Scalar:
            return Scalar(value.evaluate(q0))

        label = f"{self.name}@q={q0}" if self.name else f"q={q0}"
        return TwistSystem.from_maps(
            self.B.map_coefficients(at),
            self.Btilde.map_coefficients(at),
            self.C.map_coefficients(at),
            label,
        )


def derive_ctilde(C: TwoSlotMap) -> TwoSlotMap:
    """C̃ with c̃_{i,j,k,l} = c_{j,l,i,k}, as a map on E⊗E."""
    entries = [(k, i, l, j, value) for i, j, k, l, value in C.entries()]
    return TwoSlotMap.from_entries(C.dim, (E, E), (E, E), entries, "Ctilde")


def _validated_map(
    d: int,
    label: str,
    source: tuple[Variance, Variance],
    target: tuple[Variance, Variance],
    entries: Iterable[RawEntry],
) -> TwoSlotMap:
    seen: set[tuple[int, int, int, int]] = set()
    cleaned = []
    for position, raw in enumerate(entries):
        i, j, k, l, value = raw
        index = (i, j, k, l)
        if any(not isinstance(x, int) or not 1 <= x <= d for x in index):
            raise IndexOutOfRangeError(
                f"{label} entry #{position} {index}: indices must lie in 1..{d}",
                tensor=label,
                entry=index,
            )
        if index in seen:
            raise DuplicateEntryError(
                f"{label} entry #{position} {index} given twice",
                tensor=label,
                entry=index,
            )
        seen.add(index)
        cleaned.append((i, j, k, l, Scalar.coerce(value)))
    return TwoSlotMap.from_entries(d, source, target, cleaned, label)


def make_twist_system(
    d: int,
    entries_B: Iterable[RawEntry],
    entries_Btilde: Iterable[RawEntry],
    entries_C: Iterable[RawEntry],
    name: str = "",
) -> TwistSystem:
    """Validate sparse (i, j, k, l, coefficient) lists and build the system.

    Args:
        d: 차원 (>= 1)
        entries_B: b_{i,j,k,l}: B(f_i⊗f_j) = Σ b_{i,j,k,l} f_k⊗f_l
        entries_Btilde: b̃_{i,j,k,l}: B̃(e_i⊗e_j) = Σ b̃_{i,j,k,l} e_k⊗e_l
        entries_C: c_{i,j,k,l}: C(e_i⊗f_j) = Σ c_{i,j,k,l} f_k⊗e_l
        name: 라벨

    Returns:
        TwistSystem with C̃ computed

    Raises:
        TwistDefinitionError: d < 1
        IndexOutOfRangeError: 인덱스가 1..d 밖
        DuplicateEntryError: 중복 (i,j,k,l)
    """
    if not isinstance(d, int) or d < 1:
        raise TwistDefinitionError(f"dimension must be a positive integer, got {d!r}")
    system = TwistSystem.from_maps(
        _validated_map(d, "B", (E, E), (E, E), entries_B),
        _validated_map(
            d, "Btilde", (E_STAR, E_STAR), (E_STAR, E_STAR), entries_Btilde
        ),
        _validated_map(d, "C", (E_STAR, E), (E, E_STAR), entries_C),
        name,
    )
    logger.debug(f"twist system {name or '<anonymous>'} built, d={d}")
    return system
