"""Builtin twist systems: bosons, fermions, mixed statistics, q-deformation.

All presets are scaled flips x_i⊗x_j ↦ s(i,j) x_j⊗x_i. The q-family exists in
two exponent conventions; `qdeform` uses b = b̃ = q^{j-i}, c = q^{i-j}, while
`qdeform-alt` uses q^{i-j} for all three.
"""

from collections.abc import Callable
from dataclasses import dataclass

from twisted_wick.exceptions import TwistDefinitionError, UnknownPresetError
from twisted_wick.scalar import ONE, Scalar
from twisted_wick.tensorspace import E, E_STAR, TwoSlotMap
from twisted_wick.twist.system import TwistSystem

Scale = Callable[[int, int], Scalar]


def _sign(i: int, j: int) -> Scalar:
    return ONE if (i - j) % 2 == 0 else -ONE


@dataclass(frozen=True)
class Preset:
    """Preset recipe: one scale function per tensor."""

    name: str
    description: str
    b: Scale
    btilde: Scale
    c: Scale

    def build(self, d: int) -> TwistSystem:
        return TwistSystem.from_maps(
            TwoSlotMap.flip(d, (E, E), self.b, "B"),
            TwoSlotMap.flip(d, (E_STAR, E_STAR), self.btilde, "Btilde"),
            TwoSlotMap.flip(d, (E_STAR, E), self.c, "C"),
            self.name,
        )


PRESETS: dict[str, Preset] = {
    p.name: p
    for p in (
        Preset(
            "boson",
            "canonical commutation relations (flip)",
            lambda i, j: ONE,
            lambda i, j: ONE,
            lambda i, j: ONE,
        ),
        Preset(
            "fermion",
            "canonical anticommutation relations (minus flip)",
            lambda i, j: -ONE,
            lambda i, j: -ONE,
            lambda i, j: -ONE,
        ),
        Preset("mixed", "sign (-1)^(i-j) flip", _sign, _sign, _sign),
        Preset(
            "qdeform",
            "q-deformation, b = b~ = q^(j-i), c = q^(i-j)",
            lambda i, j: Scalar.q_power(j - i),
            lambda i, j: Scalar.q_power(j - i),
            lambda i, j: Scalar.q_power(i - j),
        ),
        Preset(
            "qdeform-alt",
            "q-deformation, b = b~ = c = q^(i-j)",
            lambda i, j: Scalar.q_power(i - j),
            lambda i, j: Scalar.q_power(i - j),
            lambda i, j: Scalar.q_power(i - j),
        ),
    )
}


def builtin_preset(name: str, d: int) -> TwistSystem:
    """Build a named preset.

    Args:
        name: boson | fermion | mixed | qdeform | qdeform-alt
        d: 차원 (>= 1)

    Raises:
        UnknownPresetError: 알 수 없는 이름
        TwistDefinitionError: d < 1
    """
    preset = PRESETS.get(name)
    if preset is None:
        known = ", ".join(PRESETS)
        raise UnknownPresetError(f"unknown preset {name!r} (known: {known})", name=name)
    if d < 1:
        raise TwistDefinitionError(f"dimension must be >= 1, got {d}")
    return preset.build(d)
