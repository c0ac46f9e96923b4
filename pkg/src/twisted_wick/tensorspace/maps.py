"""Two-slot operators and their positioned application.

A TwoSlotMap m stores, for each input pair (i, j), the image
m(x_i⊗x_j) = Σ m_{i,j,k,l} y_k⊗y_l as a sparse column. The evaluation
ev(e_i⊗f_j) = δ_ij is the case with an empty output pair.
"""

from collections.abc import Callable, Iterable, Iterator, Mapping
from dataclasses import dataclass, field

from twisted_wick.exceptions import SignatureMismatchError, SlotError
from twisted_wick.scalar import ONE, ZERO, Scalar
from twisted_wick.tensorspace.tensor import Key, Tensor, accumulate
from twisted_wick.tensorspace.words import E, E_STAR, Signature, Variance

Pair = tuple[int, int]
Column = dict[Key, Scalar]
Entry = tuple[int, int, int, int, Scalar]


@dataclass(frozen=True, eq=False)
class TwoSlotMap:
    """Exact sparse d²×d² (or d²×1 for ev) matrix between two-slot spaces.

    Attributes:
        dim: 기저 차원 d
        source: 입력 variance 쌍
        target: 출력 variance 쌍 (ev 는 빈 튜플)
        columns: 입력 쌍 → 출력 단어별 계수
        name: 표시용 이름
    """

    dim: int
    source: tuple[Variance, Variance]
    target: tuple[Variance, ...]
    columns: Mapping[Pair, Column] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self) -> None:
        if len(self.target) not in (0, 2):
            raise SlotError(f"two-slot output must have 0 or 2 slots: {self.target}")
        for (i, j), column in self.columns.items():
            if not (1 <= i <= self.dim and 1 <= j <= self.dim):
                raise SlotError(f"input pair ({i},{j}) out of range 1..{self.dim}")
            for key, value in column.items():
                if len(key) != len(self.target) or any(
                    not 1 <= k <= self.dim for k in key
                ):
                    raise SlotError(f"output word {key} invalid for {self.target}")
                if not value:
                    raise SlotError("stored coefficients must be nonzero")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_entries(
        cls,
        dim: int,
        source: tuple[Variance, Variance],
        target: tuple[Variance, ...],
        entries: Iterable[Entry],
        name: str = "",
    ) -> "TwoSlotMap":
        """Build from (i, j, k, l, value) entries; repeated entries add up."""
        columns: dict[Pair, Column] = {}
        for i, j, k, l, value in entries:
            column = columns.setdefault((i, j), {})
            accumulate(column, (k, l), Scalar.coerce(value))
        return cls(dim, source, target, _prune(columns), name)

    @classmethod
    def identity(cls, dim: int, pair: tuple[Variance, Variance]) -> "TwoSlotMap":
        columns = {
            (i, j): {(i, j): ONE}
            for i in range(1, dim + 1)
            for j in range(1, dim + 1)
        }
        return cls(dim, pair, pair, columns, "id")

    @classmethod
    def flip(
        cls,
        dim: int,
        source: tuple[Variance, Variance],
        scale: Callable[[int, int], Scalar] | None = None,
        name: str = "",
    ) -> "TwoSlotMap":
        """Scaled flip x_i⊗x_j ↦ s(i,j) x_j⊗x_i with swapped output variances."""
        target = (source[1], source[0])
        columns: dict[Pair, Column] = {}
        for i in range(1, dim + 1):
            for j in range(1, dim + 1):
                value = ONE if scale is None else scale(i, j)
                if value:
                    columns[(i, j)] = {(j, i): value}
        return cls(dim, source, target, columns, name)

    @classmethod
    def evaluation(cls, dim: int) -> "TwoSlotMap":
        """ev: E*⊗E → C, e_i⊗f_j ↦ δ_ij."""
        columns = {(i, i): {(): ONE} for i in range(1, dim + 1)}
        return cls(dim, (E_STAR, E), (), columns, "ev")

    # -- queries --------------------------------------------------------------

    def image(self, i: int, j: int) -> Column:
        return dict(self.columns.get((i, j), {}))

    def entry(self, i: int, j: int, k: int, l: int) -> Scalar:
        """m_{i,j,k,l}: coefficient of y_k⊗y_l in m(x_i⊗x_j)."""
        return self.columns.get((i, j), {}).get((k, l), ZERO)

    def entries(self) -> Iterator[Entry]:
        """Nonzero entries in lexicographic (i, j, k, l) order."""
        for (i, j) in sorted(self.columns):
            for key, value in sorted(self.columns[(i, j)].items()):
                yield (i, j, *key, value)  # type: ignore[misc]

    def is_zero(self) -> bool:
        return not self.columns

    def matrix(self) -> list[list[Scalar]]:
        """Dense matrix, rows = output words, columns = input words (lex order)."""
        d = self.dim
        inputs = [(i, j) for i in range(1, d + 1) for j in range(1, d + 1)]
        outputs: list[Key] = [()] if not self.target else list(inputs)
        return [
            [self.columns.get(col, {}).get(row, ZERO) for col in inputs]
            for row in outputs
        ]

    def uses_parameter(self) -> bool:
        return any(
            v.uses_parameter for c in self.columns.values() for v in c.values()
        )

    # -- algebra --------------------------------------------------------------

    def _require_same_shape(self, other: "TwoSlotMap") -> None:
        mine = (self.dim, self.source, self.target)
        if mine != (other.dim, other.source, other.target):
            raise SignatureMismatchError(
                "two-slot maps of different shape",
                left=(self.source, self.target),
                right=(other.source, other.target),
            )

    def __add__(self, other: "TwoSlotMap") -> "TwoSlotMap":
        self._require_same_shape(other)
        columns = {pair: dict(col) for pair, col in self.columns.items()}
        for pair, col in other.columns.items():
            target = columns.setdefault(pair, {})
            for key, value in col.items():
                accumulate(target, key, value)
        return TwoSlotMap(self.dim, self.source, self.target, _prune(columns))

    def scale(self, a: Scalar | int) -> "TwoSlotMap":
        factor = Scalar.coerce(a)
        columns = {
            pair: {key: factor * v for key, v in col.items()}
            for pair, col in self.columns.items()
        }
        return TwoSlotMap(self.dim, self.source, self.target, _prune(columns))

    def __neg__(self) -> "TwoSlotMap":
        return self.scale(-1)

    def __sub__(self, other: "TwoSlotMap") -> "TwoSlotMap":
        return self + (-other)

    def compose(self, inner: "TwoSlotMap") -> "TwoSlotMap":
        """self ∘ inner (apply inner first)."""
        if inner.target != self.source or inner.dim != self.dim:
            raise SlotError(
                f"cannot compose: inner output {inner.target} "
                f"!= outer input {self.source}"
            )
        columns: dict[Pair, Column] = {}
        for pair, col in inner.columns.items():
            out: Column = {}
            for mid, a in col.items():
                for key, b in self.columns.get((mid[0], mid[1]), {}).items():
                    accumulate(out, key, a * b)
            if out:
                columns[pair] = out
        return TwoSlotMap(self.dim, inner.source, self.target, columns)

    def map_coefficients(self, fn: Callable[[Scalar], Scalar]) -> "TwoSlotMap":
        columns: dict[Pair, Column] = {}
        for pair, col in self.columns.items():
            out: Column = {}
            for key, value in col.items():
                accumulate(out, key, fn(value))
            if out:
                columns[pair] = out
        return TwoSlotMap(self.dim, self.source, self.target, columns, self.name)

    def apply(self, t: Tensor, pos: int) -> Tensor:
        return apply_two_slot(self, t, pos)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TwoSlotMap):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.source == other.source
            and self.target == other.target
            and dict(self.columns) == dict(other.columns)
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.source, self.target, tuple(self.entries())))


def _prune(columns: dict[Pair, Column]) -> dict[Pair, Column]:
    return {pair: col for pair, col in columns.items() if col}


def apply_two_slot(m: TwoSlotMap, t: Tensor, pos: int) -> Tensor:
    """Apply m on slots (pos, pos+1) of t (1-based), identity elsewhere.

    Raises:
        SlotError: pos 범위 초과 또는 variance 불일치
    """
    n = len(t.signature)
    if not 1 <= pos <= n - 1:
        raise SlotError(
            f"position {pos} out of range for {t.signature}", position=pos
        )
    found = t.signature.slots[pos - 1 : pos + 1]
    if found != m.source:
        raise SlotError(
            f"slots {pos},{pos + 1} of {t.signature} are {found}, "
            f"{m.name or 'map'} expects {m.source}",
            position=pos,
            expected=m.source,
            found=found,
        )
    if m.dim != t.dim:
        raise SignatureMismatchError(
            f"dimension mismatch: map d={m.dim}, tensor d={t.dim}",
            left=m.dim,
            right=t.dim,
        )
    signature: Signature = t.signature.splice(pos, 2, m.target)
    acc: dict[Key, Scalar] = {}
    cut = pos - 1
    columns = m.columns
    for key, coeff in t.raw_items():
        column = columns.get((key[cut], key[cut + 1]))
        if not column:
            continue
        head = key[:cut]
        tail = key[cut + 2 :]
        for out, value in column.items():
            accumulate(acc, head + out + tail, coeff * value)
    return Tensor._trusted(t.dim, signature, acc)
