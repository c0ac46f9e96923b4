"""Test sparse tensors, signatures and two-slot maps."""

import random
from fractions import Fraction

import pytest

from twisted_wick.config import WickConfig, use_config
from twisted_wick.exceptions import (
    ResourceLimitError,
    SignatureMismatchError,
    SlotError,
)
from twisted_wick.scalar import Scalar
from twisted_wick.tensorspace import (
    E,
    E_STAR,
    BasisWord,
    GradedTensor,
    Signature,
    Tensor,
    TwoSlotMap,
    apply_two_slot,
    format_word,
    iter_words,
    tensor_product,
)


class TestSignature:
    """Variance signature."""

    def test_parse(self):
        sig = Signature.parse("E* ⊗ E E")
        assert sig.slots == (E_STAR, E, E)
        assert str(sig) == "E*⊗E⊗E"

    def test_parse_unknown(self):
        with pytest.raises(SlotError):
            Signature.parse("E F")

    def test_one_based_access(self):
        sig = Signature((E_STAR, E))
        assert sig[1] is E_STAR
        with pytest.raises(SlotError):
            sig[0]

    def test_covariant_run(self):
        sig = Signature((E_STAR, E, E, E_STAR, E))
        assert sig.covariant_run(2) == 2
        assert sig.covariant_run(4) == 0

    def test_basis_word_format(self):
        word = BasisWord(Signature((E_STAR, E)), (2, 1))
        assert str(word) == "e2⊗f1"
        assert format_word(Signature(), ()) == "ε"

    def test_iter_words_lexicographic(self):
        assert list(iter_words(2, 2)) == [(1, 1), (1, 2), (2, 1), (2, 2)]

    def test_basis_word_upper_bound_checked_by_tensor(self):
        word = BasisWord(Signature.covariant(2), (1, 3))
        assert str(word) == "f1⊗f3"
        with pytest.raises(SlotError):
            Tensor(2, word.signature, {word: 1})
        assert Tensor(3, word.signature, {word: 1}) == Tensor.f(3, 1, 3)


class TestTensorArithmetic:
    """텐서 선형 연산."""

    def test_zero_coefficients_dropped(self):
        t = Tensor(2, Signature.covariant(1), [((1,), 1), ((1,), -1), ((2,), 3)])
        assert t.support() == [(2,)]
        assert len(t) == 1

    def test_add_and_scale(self):
        s = Tensor.f(2, 1, 2)
        t = Tensor.f(2, 2, 1)
        total = s + t.scale(Fraction(1, 2))
        assert total.coefficient((2, 1)) == Fraction(1, 2)
        assert (total - total).is_zero()
        assert 2 * s == s + s

    def test_signature_mismatch(self):
        with pytest.raises(SignatureMismatchError):
            Tensor.f(2, 1) + Tensor.e(2, 1)

    def test_index_out_of_range(self):
        with pytest.raises(SlotError):
            Tensor.f(2, 3)

    def test_tensor_product(self):
        product = tensor_product(Tensor.e(2, 1), Tensor.f(2, 2).scale(3))
        assert product.signature == Signature((E_STAR, E))
        assert product.coefficient((1, 2)) == 3

    def test_word_length_limit(self):
        with (
            use_config(WickConfig(max_word_length=2)),
            pytest.raises(ResourceLimitError) as exc_info,
        ):
            Tensor.f(2, 1, 1, 1)
        assert exc_info.value.resource == "word_length"
        assert exc_info.value.requested == 3

    def test_str(self):
        t = Tensor.f(2, 1, 2) + Tensor.f(2, 2, 1).scale(Scalar.q_power(1))
        assert str(t) == "f1⊗f2 + (q^1)*f2⊗f1"
        assert str(Tensor.zero(2, Signature.covariant(2))) == "0"


class TestGradedTensor:
    """TE 원소."""

    def test_components_by_degree(self):
        g = GradedTensor(2, [Tensor.unit(2), Tensor.f(2, 1), Tensor.f(2, 1)])
        assert g.degrees() == [0, 1]
        assert g.component(1) == Tensor.f(2, 1).scale(2)
        assert g.component(3).is_zero()

    def test_cancellation_removes_degree(self):
        g = GradedTensor.of(Tensor.f(2, 1)) + GradedTensor.of(-Tensor.f(2, 1))
        assert not g

    def test_rejects_dual_slots(self):
        with pytest.raises(SlotError):
            GradedTensor.of(Tensor.e(2, 1))


class TestTwoSlotMap:
    """Two-slot 연산자의 위치 지정 적용."""

    def test_flip_applies_at_position(self):
        flip = TwoSlotMap.flip(2, (E, E))
        t = Tensor.f(2, 1, 2, 2)
        assert apply_two_slot(flip, t, 1) == Tensor.f(2, 2, 1, 2)
        assert apply_two_slot(flip, t, 2) == t

    def test_evaluation_removes_slots(self):
        ev = TwoSlotMap.evaluation(2)
        t = Tensor(2, Signature((E_STAR, E, E)), {(1, 1, 2): 1, (1, 2, 2): 5})
        assert apply_two_slot(ev, t, 1) == Tensor.f(2, 2)

    def test_variance_mismatch(self):
        flip = TwoSlotMap.flip(2, (E, E))
        with pytest.raises(SlotError) as exc_info:
            apply_two_slot(flip, Tensor(2, Signature((E_STAR, E)), {(1, 1): 1}), 1)
        assert exc_info.value.position == 1

    def test_position_out_of_range(self):
        flip = TwoSlotMap.flip(2, (E, E))
        with pytest.raises(SlotError):
            apply_two_slot(flip, Tensor.f(2, 1, 2), 2)

    def test_entries_are_lexicographic(self):
        m = TwoSlotMap.from_entries(
            2, (E, E), (E, E), [(2, 1, 1, 2, 1), (1, 2, 2, 1, 3), (1, 2, 1, 1, 1)]
        )
        assert [entry[:4] for entry in m.entries()] == [
            (1, 2, 1, 1),
            (1, 2, 2, 1),
            (2, 1, 1, 2),
        ]
        assert m.entry(1, 2, 2, 1) == 3
        assert m.entry(2, 2, 2, 2) == 0

    def test_compose_flip_twice_is_identity(self):
        flip = TwoSlotMap.flip(3, (E, E))
        assert flip.compose(flip) == TwoSlotMap.identity(3, (E, E))


def _random_map(rng: random.Random, d: int) -> TwoSlotMap:
    values = [Fraction(n, m) for n in range(-2, 3) for m in (1, 2) if n]
    entries = [
        (i, j, k, l, rng.choice(values))
        for (i, j, k, l) in iter_words(d, 4)
        if rng.random() < 0.4
    ]
    return TwoSlotMap.from_entries(d, (E, E), (E, E), entries)


class TestTwoSlotLocality:
    """서로 겹치지 않는 slot 의 연산은 교환한다."""

    def test_disjoint_slots_commute(self, random_tensor):
        rng = random.Random(61)
        for _ in range(40):
            d = rng.randint(1, 3)
            n = rng.randint(4, 5)
            m, m2 = _random_map(rng, d), _random_map(rng, d)
            pos = rng.randint(1, n - 3)
            pos2 = rng.randint(pos + 2, n - 1)
            t = random_tensor(rng, d, Signature.covariant(n), terms=4)
            left = apply_two_slot(m2, apply_two_slot(m, t, pos), pos2)
            right = apply_two_slot(m, apply_two_slot(m2, t, pos2), pos)
            assert left == right

    def test_linear(self, random_tensor):
        rng = random.Random(67)
        for _ in range(30):
            d = rng.randint(1, 3)
            m = _random_map(rng, d)
            s = random_tensor(rng, d, Signature.covariant(3))
            t = random_tensor(rng, d, Signature.covariant(3))
            a, b = Fraction(rng.randint(-3, 3)), Fraction(rng.randint(1, 3), 2)
            pos = rng.randint(1, 2)
            combined = apply_two_slot(m, s.scale(a) + t.scale(b), pos)
            separate = apply_two_slot(m, s, pos).scale(a) + apply_two_slot(
                m, t, pos
            ).scale(b)
            assert combined == separate
