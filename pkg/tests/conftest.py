"""Shared test fixtures."""

import random
from collections.abc import Callable
from fractions import Fraction

import pytest

from twisted_wick.config import ENV_CAP, ENV_MAX_WORD_LENGTH, reset_config
from twisted_wick.quotient import quotient_algebra
from twisted_wick.scalar import ONE, Scalar
from twisted_wick.tensorspace import E, E_STAR, Signature, Tensor, TwoSlotMap
from twisted_wick.twist import TwistSystem, make_twist_system

VALUES = [Fraction(n, m) for n in range(-2, 3) for m in (1, 2) if n]


@pytest.fixture(autouse=True)
def isolated_config(monkeypatch):
    """환경 변수와 전역 config, 공유 quotient 캐시를 테스트마다 초기화."""
    monkeypatch.delenv(ENV_CAP, raising=False)
    monkeypatch.delenv(ENV_MAX_WORD_LENGTH, raising=False)
    reset_config()
    quotient_algebra.cache_clear()
    yield
    reset_config()
    quotient_algebra.cache_clear()


def _random_entries(rng: random.Random, d: int, density: float) -> list:
    entries = []
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            for k in range(1, d + 1):
                for l in range(1, d + 1):
                    if rng.random() < density:
                        entries.append((i, j, k, l, rng.choice(VALUES)))
    return entries


@pytest.fixture
def random_twist() -> Callable[..., TwistSystem]:
    """Dense-ish random (B, B̃, C) with small rational entries."""

    def make(rng: random.Random, d: int, density: float = 0.4) -> TwistSystem:
        return make_twist_system(
            d,
            _random_entries(rng, d, density),
            _random_entries(rng, d, density),
            _random_entries(rng, d, density),
            name="random",
        )

    return make


@pytest.fixture
def scaled_flip_twist() -> Callable[..., TwistSystem]:
    """Scaled flips x_i⊗x_j ↦ s(i,j) x_j⊗x_i from explicit scale tables."""

    def make(
        d: int,
        b: dict[tuple[int, int], Scalar],
        btilde: dict[tuple[int, int], Scalar],
        c: dict[tuple[int, int], Scalar],
    ) -> TwistSystem:
        return TwistSystem.from_maps(
            TwoSlotMap.flip(d, (E, E), lambda i, j: b.get((i, j), ONE), "B"),
            TwoSlotMap.flip(
                d, (E_STAR, E_STAR), lambda i, j: btilde.get((i, j), ONE), "Btilde"
            ),
            TwoSlotMap.flip(d, (E_STAR, E), lambda i, j: c.get((i, j), ONE), "C"),
            "scaled-flip",
        )

    return make


@pytest.fixture
def random_tensor() -> Callable[..., Tensor]:
    """Random tensor of a given signature with a few nonzero terms."""

    def make(
        rng: random.Random, d: int, signature: Signature, terms: int = 3
    ) -> Tensor:
        items = []
        for _ in range(terms):
            key = tuple(rng.randint(1, d) for _ in range(len(signature)))
            items.append((key, rng.choice(VALUES)))
        return Tensor(d, signature, items)

    return make
