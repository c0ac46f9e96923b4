"""Variances, signatures and basis words of mixed tensor powers."""

import itertools
from collections.abc import Iterator
from dataclasses import dataclass
from enum import Enum

from twisted_wick.exceptions import SlotError


class Variance(Enum):
    """Slot type: E (basis f_i) or its dual E* (basis e_i)."""

    COVARIANT = "E"
    CONTRAVARIANT = "E*"

    @property
    def letter(self) -> str:
        return "f" if self is Variance.COVARIANT else "e"


E = Variance.COVARIANT
E_STAR = Variance.CONTRAVARIANT


@dataclass(frozen=True)
class Signature:
    """Ordered slot variances; the empty signature is the scalar level."""

    slots: tuple[Variance, ...] = ()

    @classmethod
    def covariant(cls, n: int) -> "Signature":
        return cls((E,) * n)

    @classmethod
    def parse(cls, text: str) -> "Signature":
        """Parse "E* E E" (whitespace or ⊗ separated)."""
        tokens = text.replace("⊗", " ").split()
        try:
            return cls(tuple(Variance(token) for token in tokens))
        except ValueError as e:
            raise SlotError(f"unknown variance in {text!r}") from e

    def __len__(self) -> int:
        return len(self.slots)

    def __getitem__(self, pos: int) -> Variance:
        """1-based slot access."""
        if not 1 <= pos <= len(self.slots):
            raise SlotError(f"slot {pos} out of range for {self}", position=pos)
        return self.slots[pos - 1]

    def __iter__(self) -> Iterator[Variance]:
        return iter(self.slots)

    def __add__(self, other: "Signature") -> "Signature":
        return Signature(self.slots + other.slots)

    def __str__(self) -> str:
        return "⊗".join(v.value for v in self.slots) if self.slots else "C"

    @property
    def is_covariant(self) -> bool:
        return all(v is E for v in self.slots)

    def splice(
        self, pos: int, width: int, replacement: tuple[Variance, ...]
    ) -> "Signature":
        """Replace slots pos..pos+width-1 (1-based) by replacement."""
        return Signature(
            self.slots[: pos - 1] + replacement + self.slots[pos - 1 + width :]
        )

    def covariant_run(self, pos: int) -> int:
        """Length of the run of E slots starting at pos (1-based)."""
        run = 0
        for variance in self.slots[pos - 1 :]:
            if variance is not E:
                break
            run += 1
        return run


@dataclass(frozen=True)
class BasisWord:
    """Basis element like e_1⊗f_2⊗f_1; indices are 1-based.

    A word carries no dimension, so the upper bound is checked by `Tensor`
    when the word is placed in a space of dimension d.
    """

    signature: Signature
    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.indices) != len(self.signature):
            raise SlotError(
                f"word {self.indices} does not fit signature {self.signature}"
            )
        if any(i < 1 for i in self.indices):
            raise SlotError(f"basis indices are 1-based: {self.indices}")

    def __str__(self) -> str:
        return format_word(self.signature, self.indices)


def format_word(signature: Signature, indices: tuple[int, ...]) -> str:
    if not indices:
        return "ε"
    return "⊗".join(
        f"{v.letter}{i}" for v, i in zip(signature.slots, indices, strict=True)
    )


def iter_words(dim: int, length: int) -> Iterator[tuple[int, ...]]:
    """All index tuples of a given length, in lexicographic order."""
    return itertools.product(range(1, dim + 1), repeat=length)
