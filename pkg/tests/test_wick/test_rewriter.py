"""Test normal ordering against the concrete Fock-space action."""

import random

import pytest

from twisted_wick.config import WickConfig, use_config
from twisted_wick.exceptions import (
    ResourceLimitError,
    RewriteTerminationError,
    SlotError,
)
from twisted_wick.scalar import Scalar
from twisted_wick.tensorspace import GradedTensor, Signature
from twisted_wick.twist import builtin_preset
from twisted_wick.wick import (
    NormalOrderer,
    OpWord,
    RewriteTracker,
    act_on,
    annihilator,
    creator,
    format_opword,
    normal_order,
    parse_opword,
    vacuum_action,
    vacuum_expectation,
)


def _random_word(rng: random.Random, d: int, max_length: int = 5) -> OpWord:
    terms = []
    for _ in range(rng.randint(1, 3)):
        length = rng.randint(0, max_length)
        word = tuple(
            rng.choice((creator, annihilator))(rng.randint(1, d))
            for _ in range(length)
        )
        terms.append((word, rng.randint(-2, 2) or 1))
    return OpWord(terms)


class TestNormalOrderExamples:
    """구체 예제."""

    def test_boson_ccr(self):
        ts = builtin_preset("boson", 1)
        result = normal_order(ts, parse_opword("a1 A1"))
        assert format_opword(result) == "ε + A1 a1"
        assert vacuum_expectation(ts, parse_opword("a1 A1")) == 1

    def test_fermion_car(self):
        ts = builtin_preset("fermion", 2)
        result = normal_order(ts, parse_opword("a1 A1"))
        assert format_opword(result) == "ε - A1 a1"

    def test_qdeform_off_diagonal(self):
        ts = builtin_preset("qdeform", 2)
        result = normal_order(ts, parse_opword("a1 A2"))
        assert format_opword(result) == "q^-1 A2 a1"
        assert vacuum_expectation(ts, parse_opword("a1 A2")) == 0

    def test_nested_rewrite(self):
        ts = builtin_preset("boson", 2)
        result = normal_order(ts, parse_opword("a1 A2 A1"))
        assert result == parse_opword("A2 + A2 A1 a1")

    def test_qdeform_vacuum_expectation(self):
        """c_11 = 1 이므로 <a1 a1 A1 A1> = 2."""
        ts = builtin_preset("qdeform", 2)
        assert vacuum_expectation(ts, parse_opword("a1 a1 A1 A1")) == 2

    def test_normal_ordered_input_is_unchanged(self):
        ts = builtin_preset("qdeform", 2)
        w = parse_opword("A1 A2 a2 - 3 a1 + ε")
        assert normal_order(ts, w) == w


class TestNormalOrderProperties:
    """Oracle: 정규 순서화 전후의 작용이 같다."""

    def test_action_is_preserved(self, random_twist, random_tensor):
        rng = random.Random(41)
        checked = 0
        for _ in range(25):
            d = rng.randint(1, 2)
            ts = random_twist(rng, d)
            orderer = NormalOrderer(ts)
            for _ in range(12):
                w = _random_word(rng, d)
                y = random_tensor(rng, d, Signature.covariant(rng.randint(0, 3)))
                assert act_on(ts, w, y) == act_on(ts, orderer.normal_order(w), y)
                checked += 1
        assert checked == 300

    def test_symbolic_action_is_preserved(self, random_tensor):
        ts = builtin_preset("qdeform", 2)
        rng = random.Random(43)
        for _ in range(20):
            w = _random_word(rng, 2)
            y = random_tensor(rng, 2, Signature.covariant(rng.randint(0, 2)))
            assert act_on(ts, w, y) == act_on(ts, normal_order(ts, w), y)

    def test_idempotent(self, random_twist):
        rng = random.Random(47)
        for _ in range(30):
            d = rng.randint(1, 3)
            ts = random_twist(rng, d)
            once = normal_order(ts, _random_word(rng, d, max_length=4))
            assert once.is_normal_ordered()
            assert normal_order(ts, once) == once

    def test_vacuum_action_agrees(self, random_twist):
        rng = random.Random(53)
        for _ in range(30):
            d = rng.randint(1, 2)
            ts = random_twist(rng, d)
            w = _random_word(rng, d)
            assert vacuum_action(ts, w) == vacuum_expectation(ts, w)

    def test_graded_input(self, random_tensor):
        ts = builtin_preset("fermion", 2)
        rng = random.Random(59)
        y = GradedTensor(
            2,
            [random_tensor(rng, 2, Signature.covariant(n)) for n in (0, 1, 2)],
        )
        w = parse_opword("a2 A1 + 2 A2 a1 a2")
        assert act_on(ts, w, y) == act_on(ts, normal_order(ts, w), y)


class TestRewriteTracker:
    """종료 measure."""

    def test_statistics(self):
        tracker = RewriteTracker()
        normal_order(builtin_preset("boson", 1), parse_opword("a1 a1 A1 A1"), tracker)
        stats = tracker.get_statistics()
        assert stats["rewrites"] > 0
        assert stats["max_measure"] == 4
        assert all(measure > 0 for measure in stats["history"])

    def test_non_decreasing_measure_raises(self):
        tracker = RewriteTracker()
        tracker.record(2, [1, 0])
        with pytest.raises(RewriteTerminationError):
            tracker.record(1, [1])
        assert tracker.get_statistics()["rewrites"] == 1


class TestValidation:
    """입력 제한."""

    def test_index_above_dimension(self):
        with pytest.raises(SlotError):
            normal_order(builtin_preset("boson", 2), parse_opword("a3 A1"))

    def test_word_length_limit(self):
        ts = builtin_preset("boson", 1)
        with (
            use_config(WickConfig(max_word_length=2)),
            pytest.raises(ResourceLimitError) as exc_info,
        ):
            normal_order(ts, parse_opword("a1 A1 a1"))
        assert exc_info.value.requested == 3

    def test_vacuum_expectation_is_scalar(self):
        value = vacuum_expectation(builtin_preset("boson", 1), parse_opword("A1 a1"))
        assert value == Scalar(0)
