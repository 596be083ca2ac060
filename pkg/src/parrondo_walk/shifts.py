"""Coin-conditioned shift operators as displacement tables.

Every shift used here is diagonal in the coin basis and a pure translation
in position, so it is stored as one integer step per coin basis index.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .exceptions import CapacityError, InvalidArgumentError
from .state import WalkState

__all__ = ["ShiftName", "ShiftRule", "preset", "apply_shift", "PRESET_NAMES"]


class ShiftName(str, enum.Enum):
    SINGLE = "single"
    TWO_WAIT = "two_wait"
    ONE_WAIT = "one_wait"
    THREE_COIN = "three_coin"


_TABLES = {
    ShiftName.SINGLE: (+1, -1),
    # |00> right, |01> and |10> wait, |11> left
    ShiftName.TWO_WAIT: (+1, 0, 0, -1),
    ShiftName.ONE_WAIT: (+1, +1, 0, -2),
    ShiftName.THREE_COIN: (+2, +1, 0, 0, 0, 0, -1, -2),
}

PRESET_NAMES = tuple(n.value for n in ShiftName)


@dataclass(frozen=True)
class ShiftRule:
    name: str
    displacements: tuple

    def __post_init__(self):
        disp = tuple(int(d) for d in self.displacements)
        n = len(disp)
        if n not in (2, 4, 8):
            raise InvalidArgumentError(f"displacement table must have 2, 4 or 8 entries, got {n}")
        object.__setattr__(self, "displacements", disp)

    @property
    def coin_count(self):
        return len(self.displacements).bit_length() - 1

    @property
    def max_displacement(self):
        return max(abs(d) for d in self.displacements)

    @property
    def reach(self):
        """(steps to the left, steps to the right) the support can grow per step."""
        return max(0, -min(self.displacements)), max(0, max(self.displacements))

    def as_array(self):
        return np.asarray(self.displacements, dtype=np.int64)

    def inverse(self):
        return ShiftRule(f"{self.name}_inverse", tuple(-d for d in self.displacements))

    def is_mirror_symmetric(self):
        """True when flipping every coin bit negates the displacement."""
        top = len(self.displacements) - 1
        return all(self.displacements[top - b] == -d for b, d in enumerate(self.displacements))


def preset(name):
    try:
        key = ShiftName(name.value if isinstance(name, ShiftName) else str(name).lower())
    except ValueError:
        raise InvalidArgumentError(
            f"unknown shift preset {name!r}; choose from {', '.join(PRESET_NAMES)}"
        ) from None
    return ShiftRule(key.value, _TABLES[key])


def apply_shift(state, rule):
    """Translate each coin sector by its displacement; returns a new state."""
    if rule.coin_count != state.coin_count:
        raise InvalidArgumentError(
            f"shift {rule.name!r} is for {rule.coin_count} coin(s), state has {state.coin_count}"
        )
    amps = state.amplitudes
    out = np.zeros_like(amps)
    size = amps.shape[0]
    for b, d in enumerate(rule.displacements):
        column = amps[:, b]
        rows = np.flatnonzero(column)
        if rows.size == 0:
            continue
        lo, hi = rows[0] + d, rows[-1] + d
        if lo < 0 or hi >= size:
            raise CapacityError(
                f"shift by {d:+d} on coin state {b} leaves the lattice of radius {state.radius}"
            )
        if d >= 0:
            out[d:, b] = column[: size - d]
        else:
            out[:d, b] = column[-d:]
    return WalkState(state.coin_count, state.radius, out)
