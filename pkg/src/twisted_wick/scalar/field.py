"""Exact scalars: rationals and rational functions in one parameter q.

Scalar 는 두 가지 내부 표현을 가진다.

- monomial: c * q^s (c 는 Fraction). 상수와 q-거듭제곱이 여기 속하며,
  preset 계산의 거의 전부가 이 fast path 로 처리된다.
- general: (num, den, shift) 로 num/den * q^shift. num, den 은 QQ[q] 다항식이며
  gcd 로 약분, den 은 monic, 두 다항식 모두 q 로
  나누어떨어지지 않는다.

The canonical form is unique, so equality is a syntactic comparison.
"""

from fractions import Fraction
from typing import Any

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, ring

from twisted_wick.exceptions import EvaluationPoleError, ScalarDivisionError

POLY_RING, Q = ring("q", QQ)

Rational = int | Fraction


def _qq(value: Fraction) -> Any:
    return QQ(value.numerator, value.denominator)


def _fraction(coeff: Any) -> Fraction:
    return Fraction(int(coeff.numerator), int(coeff.denominator))


def _valuation(p: PolyElement) -> int:
    return min(monom[0] for monom in p.itermonoms())


def _shift_down(p: PolyElement, k: int) -> PolyElement:
    return POLY_RING.from_dict({(e - k,): c for (e,), c in p.items()})


class Scalar:
    """Immutable element of Q(q)."""

    __slots__ = ("_coeff", "_shift", "_num", "_den")

    _coeff: Fraction | None
    _shift: int
    _num: PolyElement | None
    _den: PolyElement | None

    def __init__(self, value: Rational = 0):
        self._coeff = Fraction(value)
        self._shift = 0
        self._num = None
        self._den = None

    # -- construction -----------------------------------------------------

    @classmethod
    def _monomial(cls, coeff: Fraction, shift: int) -> "Scalar":
        obj = object.__new__(cls)
        if coeff == 0:
            shift = 0
        obj._coeff = coeff
        obj._shift = shift
        obj._num = None
        obj._den = None
        return obj

    @classmethod
    def _from_parts(cls, num: PolyElement, den: PolyElement, shift: int) -> "Scalar":
        """Normalise num/den * q^shift into canonical form."""
        if not den:
            raise ScalarDivisionError("denominator is the zero polynomial")
        if not num:
            return ZERO
        g = num.gcd(den)
        if not g.is_ground:
            num = num.exquo(g)
            den = den.exquo(g)
        lc = den.LC
        if lc != 1:
            num = num.quo_ground(lc)
            den = den.quo_ground(lc)
        vn = _valuation(num)
        vd = _valuation(den)
        if vn:
            num = _shift_down(num, vn)
        if vd:
            den = _shift_down(den, vd)
        shift += vn - vd
        if den == POLY_RING.one and len(num) == 1:
            return cls._monomial(_fraction(num.LC), shift)
        obj = object.__new__(cls)
        obj._coeff = None
        obj._shift = shift
        obj._num = num
        obj._den = den
        return obj

    @classmethod
    def q_power(cls, k: int = 1) -> "Scalar":
        """The monomial q^k (k may be negative)."""
        return cls._monomial(Fraction(1), k)

    @classmethod
    def from_polynomials(
        cls, num: PolyElement, den: PolyElement | None = None, shift: int = 0
    ) -> "Scalar":
        """Build num/den * q^shift from QQ[q] polynomials."""
        return cls._from_parts(num, POLY_RING.one if den is None else den, shift)

    @classmethod
    def coerce(cls, value: "Scalar | Rational | str") -> "Scalar":
        """Accept Scalars, ints, Fractions and coefficient expressions."""
        if isinstance(value, Scalar):
            return value
        if isinstance(value, str):
            from twisted_wick.scalar.grammar import parse_scalar

            return parse_scalar(value)
        return cls(value)

    def _parts(self) -> tuple[PolyElement, PolyElement, int]:
        if self._num is None:
            assert self._coeff is not None
            return POLY_RING(_qq(self._coeff)), POLY_RING.one, self._shift
        assert self._den is not None
        return self._num, self._den, self._shift

    # -- queries ------------------------------------------------------------

    @property
    def is_monomial(self) -> bool:
        return self._num is None

    @property
    def is_rational(self) -> bool:
        """True for plain rationals (no q dependence)."""
        return self._num is None and self._shift == 0

    @property
    def is_laurent(self) -> bool:
        """True when the denominator is 1 (a Laurent polynomial in q)."""
        return self._num is None or self._den == POLY_RING.one

    @property
    def uses_parameter(self) -> bool:
        return not self.is_rational

    def as_fraction(self) -> Fraction:
        """Value of a q-free scalar.

        Raises:
            ValueError: scalar 가 q 에 의존할 때
        """
        if not self.is_rational:
            raise ValueError(f"{self} depends on q")
        assert self._coeff is not None
        return self._coeff

    def laurent_terms(self) -> list[tuple[int, Fraction]]:
        """(exponent, coefficient) pairs in descending exponent order.

        Raises:
            ValueError: Laurent 다항식이 아닐 때
        """
        if self._num is None:
            assert self._coeff is not None
            return [] if self._coeff == 0 else [(self._shift, self._coeff)]
        if not self.is_laurent:
            raise ValueError(f"{self} is not a Laurent polynomial")
        terms = [(e + self._shift, _fraction(c)) for (e,), c in self._num.items()]
        return sorted(terms, reverse=True)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: object) -> "Scalar":
        b = _maybe(other)
        if b is None:
            return NotImplemented
        if self._num is None and b._num is None:
            assert self._coeff is not None and b._coeff is not None
            if self._shift == b._shift:
                return Scalar._monomial(self._coeff + b._coeff, self._shift)
            if self._coeff == 0:
                return b
            if b._coeff == 0:
                return self
            low = min(self._shift, b._shift)
            num = POLY_RING.from_dict(
                {
                    (self._shift - low,): _qq(self._coeff),
                    (b._shift - low,): _qq(b._coeff),
                }
            )
            return Scalar._from_parts(num, POLY_RING.one, low)
        if not self:
            return b
        if not b:
            return self
        n1, d1, s1 = self._parts()
        n2, d2, s2 = b._parts()
        low = min(s1, s2)
        num = n1 * d2 * Q ** (s1 - low) + n2 * d1 * Q ** (s2 - low)
        return Scalar._from_parts(num, d1 * d2, low)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        if self._num is None:
            assert self._coeff is not None
            return Scalar._monomial(-self._coeff, self._shift)
        obj = object.__new__(Scalar)
        obj._coeff = None
        obj._shift = self._shift
        obj._num = -self._num
        obj._den = self._den
        return obj

    def __sub__(self, other: object) -> "Scalar":
        b = _maybe(other)
        if b is None:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other: object) -> "Scalar":
        b = _maybe(other)
        if b is None:
            return NotImplemented
        return b + (-self)

    def __mul__(self, other: object) -> "Scalar":
        b = _maybe(other)
        if b is None:
            return NotImplemented
        if self._num is None and b._num is None:
            assert self._coeff is not None and b._coeff is not None
            return Scalar._monomial(self._coeff * b._coeff, self._shift + b._shift)
        if not self or not b:
            return ZERO
        n1, d1, s1 = self._parts()
        n2, d2, s2 = b._parts()
        return Scalar._from_parts(n1 * n2, d1 * d2, s1 + s2)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        """Multiplicative inverse.

        Raises:
            ScalarDivisionError: self == 0
        """
        if not self:
            raise ScalarDivisionError("inversion of zero")
        if self._num is None:
            assert self._coeff is not None
            return Scalar._monomial(1 / self._coeff, -self._shift)
        num, den, shift = self._parts()
        return Scalar._from_parts(den, num, -shift)

    def __truediv__(self, other: object) -> "Scalar":
        b = _maybe(other)
        if b is None:
            return NotImplemented
        return self * b.inverse()

    def __rtruediv__(self, other: object) -> "Scalar":
        b = _maybe(other)
        if b is None:
            return NotImplemented
        return b * self.inverse()

    def __pow__(self, exponent: int) -> "Scalar":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def evaluate(self, q0: Rational) -> Fraction:
        """Exact value at q = q0.

        Raises:
            EvaluationPoleError: q0 가 pole 일 때
        """
        point = Fraction(q0)
        if self._num is None:
            assert self._coeff is not None
            if self._shift < 0 and point == 0 and self._coeff != 0:
                raise EvaluationPoleError(f"{self} has a pole at q=0", point=point)
            if self._coeff == 0:
                return Fraction(0)
            return self._coeff * point**self._shift
        assert self._den is not None
        den = _fraction(self._den.evaluate(Q, _qq(point)))
        if den == 0 or (point == 0 and self._shift < 0):
            raise EvaluationPoleError(f"{self} has a pole at q={point}", point=point)
        num = _fraction(self._num.evaluate(Q, _qq(point)))
        return num / den * point**self._shift

    # -- comparison ---------------------------------------------------------

    def __bool__(self) -> bool:
        return self._num is not None or self._coeff != 0

    def __eq__(self, other: object) -> bool:
        b = _maybe(other)
        if b is None:
            return NotImplemented
        if self._num is None or b._num is None:
            return (
                self._num is None
                and b._num is None
                and self._coeff == b._coeff
                and self._shift == b._shift
            )
        return (
            self._shift == b._shift and self._num == b._num and self._den == b._den
        )

    def __hash__(self) -> int:
        if self._num is None:
            if self._shift == 0:
                return hash(self._coeff)
            return hash((self._coeff, self._shift))
        assert self._den is not None
        return hash(
            (frozenset(self._num.items()), frozenset(self._den.items()), self._shift)
        )

    # -- display ------------------------------------------------------------

    def to_expression(self) -> str:
        """Render in the coefficient grammar (display form if not Laurent)."""
        from twisted_wick.scalar.grammar import format_scalar

        return format_scalar(self)

    def __str__(self) -> str:
        return self.to_expression()

    def __repr__(self) -> str:
        return f"Scalar({self.to_expression()!r})"


def _maybe(value: object) -> Scalar | None:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, int | Fraction):
        return Scalar(value)
    return None


ZERO = Scalar(0)
ONE = Scalar(1)


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def scalar_neg(a: Scalar) -> Scalar:
    return -a


def scalar_inv(a: Scalar) -> Scalar:
    return a.inverse()


def scalar_eval(a: Scalar, q0: Rational) -> Fraction:
    return a.evaluate(q0)
