"""Sparse exact tensors over mixed tensor powers of E and E*."""

from collections.abc import Callable, Iterable, Iterator, Mapping
from fractions import Fraction

from twisted_wick.config import get_config
from twisted_wick.exceptions import (
    ResourceLimitError,
    SignatureMismatchError,
    SlotError,
)
from twisted_wick.scalar import ONE, Scalar
from twisted_wick.tensorspace.words import (
    BasisWord,
    Signature,
    Variance,
    format_word,
)

Key = tuple[int, ...]
Coefficient = Scalar | int | Fraction


def check_word_length(length: int) -> None:
    """Refuse signatures longer than the configured maximum.

    Raises:
        ResourceLimitError: length > max_word_length
    """
    limit = get_config().max_word_length
    if length > limit:
        raise ResourceLimitError(
            f"word length {length} exceeds configured maximum {limit}",
            resource="word_length",
            limit=limit,
            requested=length,
        )


def accumulate(acc: dict[Key, Scalar], key: Key, value: Scalar) -> None:
    """acc[key] += value, dropping the entry when it cancels."""
    current = acc.get(key)
    if current is None:
        if value:
            acc[key] = value
        return
    total = current + value
    if total:
        acc[key] = total
    else:
        del acc[key]


class Tensor:
    """Immutable finite linear combination of basis words of one signature.

    Coefficients are never zero; the zero tensor has no terms. Keys are the
    index tuples of the words (the signature is shared).
    """

    __slots__ = ("dim", "signature", "_terms")

    dim: int
    signature: Signature
    _terms: dict[Key, Scalar]

    def __init__(
        self,
        dim: int,
        signature: Signature,
        terms: Mapping[Key, Coefficient] | Iterable[tuple[Key, Coefficient]] = (),
    ):
        if dim < 1:
            raise SlotError(f"dimension must be >= 1, got {dim}")
        check_word_length(len(signature))
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Key, Scalar] = {}
        for raw_key, raw_value in items:
            key = raw_key.indices if isinstance(raw_key, BasisWord) else tuple(raw_key)
            if len(key) != len(signature):
                raise SlotError(f"word {key} does not fit signature {signature}")
            if any(not 1 <= i <= dim for i in key):
                raise SlotError(f"index out of range 1..{dim} in word {key}")
            accumulate(acc, key, Scalar.coerce(raw_value))
        self.dim = dim
        self.signature = signature
        self._terms = acc

    @classmethod
    def _trusted(
        cls, dim: int, signature: Signature, terms: dict[Key, Scalar]
    ) -> "Tensor":
        """Wrap an already-pruned dict without validation (takes ownership)."""
        obj = object.__new__(cls)
        obj.dim = dim
        obj.signature = signature
        obj._terms = terms
        return obj

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, dim: int, signature: Signature) -> "Tensor":
        return cls._trusted(dim, signature, {})

    @classmethod
    def basis(
        cls, dim: int, signature: Signature, indices: Key, coeff: Coefficient = 1
    ) -> "Tensor":
        return cls(dim, signature, {tuple(indices): coeff})

    @classmethod
    def unit(cls, dim: int, coeff: Coefficient = 1) -> "Tensor":
        """Scalar-level tensor (the vacuum when coeff = 1)."""
        return cls(dim, Signature(), {(): coeff})

    @classmethod
    def f(cls, dim: int, *indices: int) -> "Tensor":
        """Basis word f_{i1}⊗...⊗f_{in} of E^{⊗n}."""
        return cls.basis(dim, Signature.covariant(len(indices)), indices)

    @classmethod
    def e(cls, dim: int, *indices: int) -> "Tensor":
        """Basis word e_{i1}⊗...⊗e_{in} of E*^{⊗n}."""
        signature = Signature((Variance.CONTRAVARIANT,) * len(indices))
        return cls.basis(dim, signature, indices)

    # -- queries --------------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.signature)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, indices: Key) -> Scalar:
        from twisted_wick.scalar import ZERO

        return self._terms.get(tuple(indices), ZERO)

    def items(self) -> list[tuple[Key, Scalar]]:
        """Terms in lexicographic word order."""
        return sorted(self._terms.items())

    def raw_items(self) -> Iterable[tuple[Key, Scalar]]:
        """Terms in storage order (cheaper when order does not matter)."""
        return self._terms.items()

    def support(self) -> list[Key]:
        return sorted(self._terms)

    def words(self) -> Iterator[BasisWord]:
        for key in self.support():
            yield BasisWord(self.signature, key)

    def as_dict(self) -> dict[Key, Scalar]:
        return dict(self._terms)

    def uses_parameter(self) -> bool:
        return any(c.uses_parameter for c in self._terms.values())

    # -- arithmetic -----------------------------------------------------------

    def _require_compatible(self, other: "Tensor") -> None:
        if self.signature != other.signature or self.dim != other.dim:
            raise SignatureMismatchError(
                f"cannot combine {self.signature} (d={self.dim}) "
                f"with {other.signature} (d={other.dim})",
                left=self.signature,
                right=other.signature,
            )

    def __add__(self, other: "Tensor") -> "Tensor":
        self._require_compatible(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        acc = dict(self._terms)
        for key, value in other._terms.items():
            accumulate(acc, key, value)
        return Tensor._trusted(self.dim, self.signature, acc)

    def __neg__(self) -> "Tensor":
        return Tensor._trusted(
            self.dim, self.signature, {k: -v for k, v in self._terms.items()}
        )

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def scale(self, a: Coefficient) -> "Tensor":
        factor = Scalar.coerce(a)
        if not factor:
            return Tensor.zero(self.dim, self.signature)
        if factor == ONE:
            return self
        return Tensor._trusted(
            self.dim, self.signature, {k: factor * v for k, v in self._terms.items()}
        )

    def __rmul__(self, a: Coefficient) -> "Tensor":
        return self.scale(a)

    def map_coefficients(self, fn: Callable[[Scalar], Scalar]) -> "Tensor":
        acc: dict[Key, Scalar] = {}
        for key, value in self._terms.items():
            accumulate(acc, key, fn(value))
        return Tensor._trusted(self.dim, self.signature, acc)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.signature == other.signature
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.signature, frozenset(self._terms.items())))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for key, value in self.items():
            word = format_word(self.signature, key)
            if value == ONE:
                parts.append(word)
            else:
                parts.append(f"({value.to_expression()})*{word}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Tensor(d={self.dim}, {self.signature}: {self})"


def tensor_add(s: Tensor, t: Tensor) -> Tensor:
    return s + t


def tensor_scale(a: Coefficient, t: Tensor) -> Tensor:
    return t.scale(a)


def tensor_product(s: Tensor, t: Tensor) -> Tensor:
    """s ⊗ t; signatures concatenate, coefficients multiply.

    Raises:
        SignatureMismatchError: 서로 다른 d
        ResourceLimitError: 결과 길이가 max_word_length 초과
    """
    if s.dim != t.dim:
        raise SignatureMismatchError(
            f"dimension mismatch: {s.dim} vs {t.dim}", left=s.dim, right=t.dim
        )
    signature = s.signature + t.signature
    check_word_length(len(signature))
    acc: dict[Key, Scalar] = {}
    for left, a in s.raw_items():
        for right, b in t.raw_items():
            accumulate(acc, left + right, a * b)
    return Tensor._trusted(s.dim, signature, acc)


class GradedTensor:
    """Element of TE: finitely many homogeneous covariant components."""

    __slots__ = ("dim", "_components")

    def __init__(self, dim: int, components: Iterable[Tensor] = ()):
        self.dim = dim
        self._components: dict[int, Tensor] = {}
        for tensor in components:
            self._add_component(tensor)

    def _add_component(self, tensor: Tensor) -> None:
        if not tensor.signature.is_covariant:
            raise SlotError(f"graded tensors are covariant, got {tensor.signature}")
        n = tensor.degree
        current = self._components.get(n)
        total = tensor if current is None else current + tensor
        if total:
            self._components[n] = total
        else:
            self._components.pop(n, None)

    @classmethod
    def of(cls, tensor: Tensor) -> "GradedTensor":
        return cls(tensor.dim, [tensor])

    def component(self, n: int) -> Tensor:
        return self._components.get(n, Tensor.zero(self.dim, Signature.covariant(n)))

    def degrees(self) -> list[int]:
        return sorted(self._components)

    def __add__(self, other: "GradedTensor") -> "GradedTensor":
        result = GradedTensor(self.dim, self._components.values())
        for tensor in other._components.values():
            result._add_component(tensor)
        return result

    def scale(self, a: Coefficient) -> "GradedTensor":
        return GradedTensor(self.dim, [t.scale(a) for t in self._components.values()])

    def __bool__(self) -> bool:
        return bool(self._components)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedTensor):
            return NotImplemented
        return self.dim == other.dim and self._components == other._components

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        inner = ", ".join(f"{n}: {self._components[n]}" for n in self.degrees())
        return f"GradedTensor({{{inner}}})"
