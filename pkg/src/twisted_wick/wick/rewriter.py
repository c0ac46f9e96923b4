"""Normal ordering with the C-relation and the concrete Fock-space action.

Only a_i A_j → δ_ij ε + Σ c_{i,j,k,l} A_k a_l is used as a rewrite. The B and
B̃ relations are not orientable reductions, so creator and annihilator blocks
are left as they are; compare creator strings through the quotient instead.
"""

import logging

from twisted_wick.config import get_config
from twisted_wick.contraction import ContractionEngine
from twisted_wick.exceptions import ResourceLimitError, SlotError
from twisted_wick.scalar import ONE, Scalar
from twisted_wick.tensorspace import GradedTensor, Tensor
from twisted_wick.twist import TwistSystem
from twisted_wick.wick.opword import (
    OpWord,
    Word,
    add_term,
    annihilator,
    creator,
    inversions,
)
from twisted_wick.wick.tracker import RewriteTracker

logger = logging.getLogger(__name__)

Expansion = dict[Word, Scalar]


def _validate(ts: TwistSystem, w: OpWord) -> None:
    if w.max_index() > ts.dim:
        raise SlotError(f"word uses index {w.max_index()} but d={ts.dim}")
    limit = get_config().max_word_length
    if w.max_length > limit:
        raise ResourceLimitError(
            f"word of length {w.max_length} exceeds maximum {limit}",
            resource="word_length",
            limit=limit,
            requested=w.max_length,
        )


def _first_inversion(word: Word) -> int:
    """Position p with word[p] an annihilator and word[p+1] a creator, or -1."""
    for p in range(len(word) - 1):
        if not word[p].is_creator and word[p + 1].is_creator:
            return p
    return -1


class NormalOrderer:
    """Memoized rewriter for one twist system."""

    def __init__(self, ts: TwistSystem, tracker: RewriteTracker | None = None):
        self.ts = ts
        self.tracker = tracker
        self._memo: dict[Word, Expansion] = {}

    def expand(self, word: Word) -> Expansion:
        """Normal form of a single word."""
        cached = self._memo.get(word)
        if cached is not None:
            return cached
        p = _first_inversion(word)
        if p < 0:
            result: Expansion = {word: ONE}
            self._memo[word] = result
            return result
        i, j = word[p].index, word[p + 1].index
        head, tail = word[:p], word[p + 2 :]
        replacements: list[tuple[Word, Scalar]] = []
        if i == j:
            replacements.append((head + tail, ONE))
        for (k, l), coeff in self.ts.C.image(i, j).items():
            replacements.append((head + (creator(k), annihilator(l)) + tail, coeff))
        if self.tracker is not None:
            self.tracker.record(
                inversions(word), (inversions(w) for w, _ in replacements)
            )
        result = {}
        for replaced, coeff in replacements:
            for normal, value in self.expand(replaced).items():
                add_term(result, normal, coeff * value)
        self._memo[word] = result
        return result

    def normal_order(self, w: OpWord) -> OpWord:
        _validate(self.ts, w)
        acc: Expansion = {}
        for word, coeff in w.raw_items():
            for normal, value in self.expand(word).items():
                add_term(acc, normal, coeff * value)
        return OpWord._trusted(acc)


def normal_order(
    ts: TwistSystem, w: OpWord, tracker: RewriteTracker | None = None
) -> OpWord:
    """Move every creator left of every annihilator.

    Args:
        ts: 트위스트 시스템 (C 만 사용)
        w: 입력 OpWord
        tracker: 종료 measure 감사용 (선택)

    Returns:
        Normal-ordered OpWord equal to w as an operator on TE

    Raises:
        SlotError: 인덱스가 d 초과
        ResourceLimitError: 단어 길이가 max_word_length 초과
    """
    return NormalOrderer(ts, tracker).normal_order(w)


def act_on(ts: TwistSystem, w: OpWord, y: Tensor | GradedTensor) -> GradedTensor:
    """Apply w to y, symbols right to left, via a_{n,i} and a⁺_{n,j}.

    Raises:
        ResourceLimitError: 중간 degree 가 cap 초과
    """
    _validate(ts, w)
    eng = ContractionEngine(ts)
    if isinstance(y, Tensor):
        components = [y]
    else:
        components = [y.component(n) for n in y.degrees()]
    result = GradedTensor(ts.dim)
    for word, coeff in w.raw_items():
        for component in components:
            current = component
            for symbol in reversed(word):
                if not current:
                    break
                if symbol.is_creator:
                    current = eng.create(symbol.index, current)
                else:
                    current = eng.annihilate(symbol.index, current)
            if current:
                result = result + GradedTensor.of(current.scale(coeff))
    return result


def vacuum_expectation(ts: TwistSystem, w: OpWord) -> Scalar:
    """Coefficient of ε in normal_order(w)."""
    return normal_order(ts, w).coefficient(())


def vacuum_action(ts: TwistSystem, w: OpWord) -> Scalar:
    """Scalar component of act_on(w, vacuum); equals vacuum_expectation."""
    result = act_on(ts, w, Tensor.unit(ts.dim))
    return result.component(0).coefficient(())
