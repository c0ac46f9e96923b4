"""Test exact echelon subspaces."""

import random
from fractions import Fraction

import pytest
import sympy

from twisted_wick.exceptions import SignatureMismatchError
from twisted_wick.quotient import Subspace, membership
from twisted_wick.scalar import Scalar
from twisted_wick.tensorspace import Signature, Tensor, iter_words

COVARIANT_1 = Signature.covariant(1)


def _sympy_rank(d: int, n: int, tensors: list[Tensor]) -> int:
    words = list(iter_words(d, n))
    rows = []
    for t in tensors:
        row = []
        for word in words:
            value = t.coefficient(word).as_fraction()
            row.append(sympy.Rational(value.numerator, value.denominator))
        rows.append(row)
    if not rows:
        return 0
    return int(sympy.Matrix(rows).rank())


class TestSubspaceBasics:
    """Echelon 기저와 멤버십."""

    def test_dependent_vector_is_rejected(self):
        space = Subspace(2, COVARIANT_1)
        assert space.add(Tensor.f(2, 1) + Tensor.f(2, 2))
        assert space.add(Tensor.f(2, 2))
        assert not space.add(Tensor.f(2, 1).scale(3))
        assert space.rank == 2
        assert space.pivots == [(1,), (2,)]

    def test_rows_are_fully_reduced(self):
        space = Subspace.span(
            2, COVARIANT_1, [Tensor.f(2, 1) + Tensor.f(2, 2), Tensor.f(2, 2)]
        )
        assert space.rows() == [Tensor.f(2, 1), Tensor.f(2, 2)]

    def test_pivot_coefficient_is_one(self):
        space = Subspace.span(
            2, Signature.covariant(2), [Tensor.f(2, 1, 2).scale(Fraction(2, 3))]
        )
        (row,) = space.rows()
        assert row.coefficient((1, 2)) == 1

    def test_membership_witness(self):
        space = Subspace.span(2, COVARIANT_1, [Tensor.f(2, 1)])
        result = membership(space, Tensor.f(2, 1) + Tensor.f(2, 2).scale(5))
        assert not result
        assert result.remainder == Tensor.f(2, 2).scale(5)
        assert Tensor.f(2, 1).scale(-4) in space

    def test_symbolic_coefficients(self):
        q = Scalar.q_power(1)
        sig = Signature.covariant(2)
        space = Subspace.span(2, sig, [Tensor.f(2, 1, 2) - Tensor.f(2, 2, 1).scale(q)])
        assert Tensor.f(2, 1, 2).scale(q.inverse()) - Tensor.f(2, 2, 1) in space

    def test_signature_mismatch(self):
        space = Subspace(2, COVARIANT_1)
        with pytest.raises(SignatureMismatchError):
            space.add(Tensor.f(2, 1, 1))

    def test_equality_ignores_generators(self):
        a = Subspace.span(2, COVARIANT_1, [Tensor.f(2, 1) + Tensor.f(2, 2)])
        b = Subspace.span(2, COVARIANT_1, [(Tensor.f(2, 1) + Tensor.f(2, 2)).scale(7)])
        c = Subspace.span(2, COVARIANT_1, [Tensor.f(2, 1)])
        assert a == b
        assert a != c


class TestSolve:
    """Source-tracked preimage."""

    def test_combination(self):
        space = Subspace.span_with_sources(
            2,
            COVARIANT_1,
            [("a", Tensor.f(2, 1) + Tensor.f(2, 2)), ("b", Tensor.f(2, 2))],
        )
        assert space.solve(Tensor.f(2, 1)) == {"a": 1, "b": -1}
        assert space.solve(Tensor.f(2, 2).scale(3)) == {"b": 3}

    def test_outside_span(self):
        space = Subspace.span_with_sources(2, COVARIANT_1, [("a", Tensor.f(2, 1))])
        assert space.solve(Tensor.f(2, 2)) is None

    def test_requires_sources(self):
        space = Subspace.span(2, COVARIANT_1, [Tensor.f(2, 1)])
        with pytest.raises(ValueError):
            space.solve(Tensor.f(2, 1))

    def test_random_preimages(self, random_tensor):
        """solve 결과로 재구성한 벡터가 원래 벡터와 같다."""
        rng = random.Random(3)
        for _ in range(60):
            d = rng.randint(1, 3)
            sig = Signature.covariant(2)
            generators = [
                (g, random_tensor(rng, d, sig)) for g in range(rng.randint(1, 5))
            ]
            space = Subspace.span_with_sources(d, sig, generators)
            weights = {g: Fraction(rng.randint(-3, 3)) for g, _ in generators}
            target = Tensor.zero(d, sig)
            for g, t in generators:
                target = target + t.scale(weights[g])
            solution = space.solve(target)
            assert solution is not None
            rebuilt = Tensor.zero(d, sig)
            for g, t in generators:
                rebuilt = rebuilt + t.scale(solution.get(g, 0))
            assert rebuilt == target


class TestRankAgainstSympy:
    """무작위 생성자 집합의 rank 를 sympy 와 비교."""

    def test_random_spans(self, random_tensor):
        rng = random.Random(5)
        for _ in range(80):
            d = rng.randint(1, 3)
            n = rng.randint(1, 3)
            sig = Signature.covariant(n)
            tensors = [
                random_tensor(rng, d, sig, terms=rng.randint(1, 4))
                for _ in range(rng.randint(0, 6))
            ]
            space = Subspace.span(d, sig, tensors)
            assert space.rank == _sympy_rank(d, n, tensors)
            for t in tensors:
                assert t in space
                assert space.reduce(t).is_zero()
