"""Formal linear combinations of creation/annihilation words.

Word syntax (CLI and tests):

    expr     := sign? monomial (('+'|'-') monomial)*
    monomial := (coefficient '*'?)? word
    word     := symbol+ | 'ε' | 'eps'
    symbol   := 'a' index | 'A' index       (a = annihilator, A = creator)

The coefficient is one product term of the scalar grammar, e.g. `q^-1`,
`1/2*q^2` or `(q^2 - 1)`.
"""

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any

import pyparsing as pp

from twisted_wick.exceptions import WordSyntaxError
from twisted_wick.scalar import ONE, Scalar, coefficient_term, format_scalar


class SymbolKind(Enum):
    """Creator A_j (a⁺_j) or annihilator a_i."""

    CREATOR = "A"
    ANNIHILATOR = "a"


@dataclass(frozen=True)
class Symbol:
    kind: SymbolKind
    index: int

    @property
    def is_creator(self) -> bool:
        return self.kind is SymbolKind.CREATOR

    def sort_key(self) -> tuple[int, int]:
        return (0 if self.is_creator else 1, self.index)

    def __str__(self) -> str:
        return f"{self.kind.value}{self.index}"


Word = tuple[Symbol, ...]
Coefficient = Scalar | int | Fraction


def creator(j: int) -> Symbol:
    return Symbol(SymbolKind.CREATOR, j)


def annihilator(i: int) -> Symbol:
    return Symbol(SymbolKind.ANNIHILATOR, i)


def inversions(word: Word) -> int:
    """Number of (annihilator, creator-to-its-right) pairs."""
    count = 0
    seen_annihilators = 0
    for symbol in word:
        if symbol.is_creator:
            count += seen_annihilators
        else:
            seen_annihilators += 1
    return count


def word_key(word: Word) -> tuple[int, tuple[tuple[int, int], ...]]:
    return (len(word), tuple(s.sort_key() for s in word))


def format_symbols(word: Word) -> str:
    return " ".join(str(s) for s in word) if word else "ε"


class OpWord:
    """Immutable finite sum Σ coeff·word with nonzero coefficients."""

    __slots__ = ("_terms",)

    _terms: dict[Word, Scalar]

    def __init__(
        self,
        terms: Mapping[Word, Coefficient] | Iterable[tuple[Word, Coefficient]] = (),
    ):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, Scalar] = {}
        for raw_word, raw_value in items:
            word = tuple(raw_word)
            for symbol in word:
                if not isinstance(symbol, Symbol) or symbol.index < 1:
                    raise WordSyntaxError(f"invalid symbol {symbol!r} in word")
            add_term(acc, word, Scalar.coerce(raw_value))
        self._terms = acc

    @classmethod
    def _trusted(cls, terms: dict[Word, Scalar]) -> "OpWord":
        obj = object.__new__(cls)
        obj._terms = terms
        return obj

    # -- constructors ---------------------------------------------------------

    @classmethod
    def of(cls, *symbols: Symbol, coeff: Coefficient = 1) -> "OpWord":
        return cls({tuple(symbols): coeff})

    @classmethod
    def empty(cls, coeff: Coefficient = 1) -> "OpWord":
        """ε, the identity operator."""
        return cls({(): coeff})

    @classmethod
    def zero(cls) -> "OpWord":
        return cls._trusted({})

    @classmethod
    def parse(cls, text: str) -> "OpWord":
        return parse_opword(text)

    # -- queries --------------------------------------------------------------

    def terms(self) -> list[tuple[Word, Scalar]]:
        """Terms ordered by length, then creators before annihilators."""
        return sorted(self._terms.items(), key=lambda item: word_key(item[0]))

    def raw_items(self) -> Iterable[tuple[Word, Scalar]]:
        return self._terms.items()

    def coefficient(self, word: Iterable[Symbol]) -> Scalar:
        return self._terms.get(tuple(word), Scalar(0))

    def __iter__(self) -> Iterator[Word]:
        return iter(word for word, _ in self.terms())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def max_length(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def max_index(self) -> int:
        return max((s.index for w in self._terms for s in w), default=0)

    def is_normal_ordered(self) -> bool:
        return all(inversions(word) == 0 for word in self._terms)

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "OpWord") -> "OpWord":
        if not isinstance(other, OpWord):
            return NotImplemented
        acc = dict(self._terms)
        for word, value in other._terms.items():
            add_term(acc, word, value)
        return OpWord._trusted(acc)

    def __neg__(self) -> "OpWord":
        return OpWord._trusted({w: -v for w, v in self._terms.items()})

    def __sub__(self, other: "OpWord") -> "OpWord":
        return self + (-other)

    def scale(self, a: Coefficient) -> "OpWord":
        factor = Scalar.coerce(a)
        if not factor:
            return OpWord.zero()
        return OpWord._trusted({w: v * factor for w, v in self._terms.items()})

    def __mul__(self, other: object) -> "OpWord":
        """Concatenation product of words; scalars scale."""
        if isinstance(other, OpWord):
            acc: dict[Word, Scalar] = {}
            for left, a in self._terms.items():
                for right, b in other._terms.items():
                    add_term(acc, left + right, a * b)
            return OpWord._trusted(acc)
        if isinstance(other, Scalar | int | Fraction):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other: object) -> "OpWord":
        if isinstance(other, Scalar | int | Fraction):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OpWord):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        return format_opword(self)

    def __repr__(self) -> str:
        return f"OpWord({format_opword(self)!r})"


def add_term(acc: dict[Word, Scalar], word: Word, value: Scalar) -> None:
    current = acc.get(word)
    total = value if current is None else current + value
    if total:
        acc[word] = total
    else:
        acc.pop(word, None)


# -- text form ------------------------------------------------------------------


def _monomial_sign(value: Scalar) -> tuple[bool, Scalar]:
    """(negative, magnitude) for monomials; sums keep their own sign."""
    if value.is_monomial:
        terms = value.laurent_terms()
        if terms and terms[0][1] < 0:
            return True, -value
    return False, value


def format_opword(w: OpWord) -> str:
    """Render in the word grammar; parse_opword(format_opword(w)) == w."""
    parts: list[str] = []
    for word, value in w.terms():
        negative, magnitude = _monomial_sign(value)
        body = format_symbols(word)
        if magnitude != ONE:
            coeff = format_scalar(magnitude)
            if not magnitude.is_monomial:
                coeff = f"({coeff})"
            body = f"{coeff} {body}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(parts) if parts else "0"


def _symbol_action(toks: pp.ParseResults) -> Symbol:
    text: str = toks[0]
    kind = SymbolKind.CREATOR if text[0] == "A" else SymbolKind.ANNIHILATOR
    return Symbol(kind, int(text[1:]))


def _monomial_action(toks: pp.ParseResults) -> Any:
    coeff = ONE
    symbols: list[Symbol] = []
    for tok in toks:
        if isinstance(tok, Scalar):
            coeff = coeff * tok
        elif isinstance(tok, Symbol):
            symbols.append(tok)
    return [(tuple(symbols), coeff)]


def _expr_action(toks: pp.ParseResults) -> Any:
    terms: list[tuple[Word, Scalar]] = []
    sign = ONE
    for tok in toks:
        if tok == "-":
            sign = -ONE
        elif tok == "+":
            sign = ONE
        else:
            word, coeff = tok
            terms.append((word, sign * coeff))
            sign = ONE
    return [OpWord(terms)]


@lru_cache(maxsize=1)
def _word_grammar() -> pp.ParserElement:
    symbol = pp.Regex(r"[aA][1-9]\d*").set_parse_action(_symbol_action)
    empty = (pp.Literal("ε") | pp.Keyword("eps")).suppress()
    word = pp.OneOrMore(symbol) | empty
    coefficient = coefficient_term().copy() + pp.Optional(pp.Suppress("*"))
    monomial = (pp.Optional(coefficient) + word).set_parse_action(_monomial_action)
    joiner = pp.one_of("+ -")
    expr = pp.Optional(joiner) + monomial + pp.ZeroOrMore(joiner + monomial)
    return expr.set_parse_action(_expr_action)


def parse_opword(text: str) -> OpWord:
    """Parse a word expression such as "a1 A2 - q^-1 A2 a1" or "ε + A1 a1".

    Raises:
        WordSyntaxError: 구문 오류 (position/column 포함)
    """
    try:
        result = _word_grammar().parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise WordSyntaxError(
            f"invalid operator word {text!r}: {e.msg} (column {e.col})",
            text=text,
            position=e.loc,
            line=e.lineno,
            column=e.col,
        ) from e
    value: OpWord = result[0]
    return value
