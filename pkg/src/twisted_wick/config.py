"""Runtime configuration.

Resource caps default to values that keep d^n spaces desk-sized; the
environment can override them for larger runs.
"""

import os
from collections.abc import Iterator
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, replace

from twisted_wick.exceptions import ConfigError

ENV_CAP = "TWISTED_WICK_CAP"
ENV_MAX_WORD_LENGTH = "TWISTED_WICK_MAX_WORD_LENGTH"


@dataclass(frozen=True)
class WickConfig:
    """Resource limits shared by every module.

    Attributes:
        max_word_length: 텐서 signature 최대 길이
        dimension_cap: 체크가 열거할 수 있는 최대 ambient 차원
        max_degree: CLI 기본 n_max
    """

    max_word_length: int = 8
    dimension_cap: int = 100_000
    max_degree: int = 4

    def __post_init__(self) -> None:
        if self.max_word_length < 1:
            raise ConfigError(f"max_word_length must be >= 1: {self.max_word_length}")
        if self.dimension_cap < 1:
            raise ConfigError(f"dimension_cap must be >= 1: {self.dimension_cap}")
        if self.max_degree < 0:
            raise ConfigError(f"max_degree must be >= 0: {self.max_degree}")

    @classmethod
    def from_env(cls) -> "WickConfig":
        """Build a config from defaults plus environment overrides.

        Returns:
            WickConfig with TWISTED_WICK_* overrides applied

        Raises:
            ConfigError: 환경 변수가 정수가 아닐 때
        """
        base = cls()
        return replace(
            base,
            dimension_cap=_env_int(ENV_CAP, base.dimension_cap),
            max_word_length=_env_int(ENV_MAX_WORD_LENGTH, base.max_word_length),
        )

    def with_cap(self, cap: int | None) -> "WickConfig":
        """Return a copy with a different dimension cap (None keeps it)."""
        if cap is None:
            return self
        return replace(self, dimension_cap=cap)


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError as e:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from e


# asyncio tasks and to_thread workers run in a copy of the caller's context
_active: ContextVar[WickConfig | None] = ContextVar(
    "twisted_wick_config", default=None
)


def get_config() -> WickConfig:
    """Active configuration; read from the environment on first use."""
    config = _active.get()
    if config is None:
        config = WickConfig.from_env()
        _active.set(config)
    return config


def reset_config() -> None:
    """Forget the active configuration so the next read re-reads the env."""
    _active.set(None)


@contextmanager
def use_config(config: WickConfig) -> Iterator[WickConfig]:
    """Install a configuration for the current context."""
    token = _active.set(config)
    try:
        yield config
    finally:
        _active.reset(token)
