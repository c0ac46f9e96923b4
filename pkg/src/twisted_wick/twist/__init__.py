"""Twist systems and builtin presets."""

from twisted_wick.twist.presets import PRESETS, Preset, builtin_preset
from twisted_wick.twist.system import (
    TENSOR_NAMES,
    TwistSystem,
    derive_ctilde,
    make_twist_system,
)

__all__ = [
    "PRESETS",
    "TENSOR_NAMES",
    "Preset",
    "TwistSystem",
    "builtin_preset",
    "derive_ctilde",
    "make_twist_system",
]
