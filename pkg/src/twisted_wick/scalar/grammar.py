"""Coefficient expression grammar.

    expr     := term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := '-'? atom
    atom     := rational | 'q' ('^' integer)? | '(' expr ')'
    rational := integer ('/' positive-integer)?

Whitespace is insignificant. The grammar covers Laurent polynomials in q;
format_scalar emits exactly this syntax for them.
"""

from fractions import Fraction
from functools import lru_cache, reduce
from operator import mul
from typing import Any

import pyparsing as pp

from twisted_wick.exceptions import CoefficientSyntaxError
from twisted_wick.scalar.field import ONE, ZERO, Scalar


def _rational_action(s: str, loc: int, toks: pp.ParseResults) -> Scalar:
    numerator = int(toks[0])
    if len(toks) == 1:
        return Scalar(numerator)
    denominator = int(toks[1])
    if denominator == 0:
        raise pp.ParseFatalException(s, loc, "zero denominator")
    return Scalar(Fraction(numerator, denominator))


def _q_action(toks: pp.ParseResults) -> Scalar:
    exponent = int(toks[1]) if len(toks) > 1 else 1
    return Scalar.q_power(exponent)


def _factor_action(toks: pp.ParseResults) -> Scalar:
    if len(toks) == 2:
        return -toks[1]
    return toks[0]


def _term_action(toks: pp.ParseResults) -> Scalar:
    return reduce(mul, toks, ONE)


def _expr_action(toks: pp.ParseResults) -> Scalar:
    total = toks[0]
    for op, value in zip(toks[1::2], toks[2::2], strict=True):
        total = total + value if op == "+" else total - value
    return total


@lru_cache(maxsize=1)
def _grammar() -> tuple[pp.ParserElement, pp.ParserElement]:
    expr = pp.Forward()
    integer = pp.Regex(r"-?\d+")
    rational = (integer + pp.Optional(pp.Suppress("/") + pp.Regex(r"\d+")))
    rational.set_parse_action(_rational_action)
    q_atom = pp.Literal("q") + pp.Optional(pp.Suppress("^") + integer)
    q_atom.set_parse_action(_q_action)
    atom = rational | q_atom | (pp.Suppress("(") + expr + pp.Suppress(")"))
    factor = (pp.Optional(pp.Literal("-")) + atom).set_parse_action(_factor_action)
    term = (factor + pp.ZeroOrMore(pp.Suppress("*") + factor)).set_parse_action(
        _term_action
    )
    expr <<= (term + pp.ZeroOrMore(pp.one_of("+ -") + term)).set_parse_action(
        _expr_action
    )
    return expr, term


def coefficient_term() -> pp.ParserElement:
    """Grammar element for one product term, for embedding in other grammars."""
    return _grammar()[1]


def parse_scalar(text: str) -> Scalar:
    """Parse a coefficient expression.

    Args:
        text: 예) "1/2", "q^-1", "(q^2-1)*1/2"

    Returns:
        Canonical Scalar

    Raises:
        CoefficientSyntaxError: 구문 오류 (position/column 포함)
    """
    expr, _ = _grammar()
    try:
        result = expr.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise CoefficientSyntaxError(
            f"invalid coefficient {text!r}: {e.msg} (column {e.col})",
            text=text,
            position=e.loc,
            line=e.lineno,
            column=e.col,
        ) from e
    value: Any = result[0]
    return value


def _render_terms(terms: list[tuple[int, Fraction]]) -> str:
    parts: list[str] = []
    for exponent, coeff in terms:
        magnitude = abs(coeff)
        if exponent == 0:
            body = str(magnitude)
        elif magnitude == 1:
            body = f"q^{exponent}"
        else:
            body = f"{magnitude}*q^{exponent}"
        if not parts:
            parts.append(f"-{body}" if coeff < 0 else body)
        else:
            parts.append(f"- {body}" if coeff < 0 else f"+ {body}")
    return " ".join(parts) if parts else "0"


def format_scalar(value: Scalar) -> str:
    """Render a Scalar; Laurent polynomials round-trip through parse_scalar."""
    if value == ZERO:
        return "0"
    if value.is_laurent:
        return _render_terms(value.laurent_terms())
    num, den, shift = value._parts()
    num_terms = sorted(
        ((e + shift, _to_fraction(c)) for (e,), c in num.items()), reverse=True
    )
    den_terms = sorted(((e, _to_fraction(c)) for (e,), c in den.items()), reverse=True)
    return f"({_render_terms(num_terms)})/({_render_terms(den_terms)})"


def _to_fraction(coeff: Any) -> Fraction:
    return Fraction(int(coeff.numerator), int(coeff.denominator))
