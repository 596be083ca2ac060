"""Walker-and-coins state on a bounded integer lattice."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidArgumentError

__all__ = [
    "WalkState",
    "PositionDistribution",
    "Metrics",
    "init_single_default",
    "init_two_coin_theta",
    "init_basis",
    "position_distribution",
    "metrics",
    "metrics_from_probabilities",
]


def _check_radius(radius):
    if int(radius) != radius or radius < 0:
        raise InvalidArgumentError(f"radius must be a non-negative integer, got {radius!r}")
    return int(radius)


@dataclass
class WalkState:
    """Amplitudes indexed ``[position + radius, coin_basis_index]``."""

    coin_count: int
    radius: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.coin_count not in (1, 2, 3):
            raise InvalidArgumentError(f"coin_count must be 1, 2 or 3, got {self.coin_count!r}")
        self.radius = _check_radius(self.radius)
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        expected = (2 * self.radius + 1, 2**self.coin_count)
        if self.amplitudes.shape != expected:
            raise InvalidArgumentError(
                f"amplitudes must have shape {expected}, got {self.amplitudes.shape}"
            )

    @classmethod
    def zeros(cls, coin_count, radius):
        radius = _check_radius(radius)
        return cls(coin_count, radius, np.zeros((2 * radius + 1, 2**coin_count), np.complex128))

    @property
    def positions(self):
        return np.arange(-self.radius, self.radius + 1)

    @property
    def coin_dim(self):
        return 2**self.coin_count

    def amplitude(self, position, coin):
        if abs(position) > self.radius:
            return 0j
        return complex(self.amplitudes[position + self.radius, coin])

    def coin_vector(self, position=0):
        return self.amplitudes[position + self.radius].copy()

    def norm(self):
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def copy(self):
        return WalkState(self.coin_count, self.radius, self.amplitudes.copy())

    def support(self):
        """(min, max) occupied positions, or None for the zero state."""
        rows = np.flatnonzero(np.any(self.amplitudes != 0, axis=1))
        if rows.size == 0:
            return None
        return int(rows[0]) - self.radius, int(rows[-1]) - self.radius

    def mirrored(self):
        """Reflect positions n -> -n, leaving the coin sectors alone."""
        return WalkState(self.coin_count, self.radius, self.amplitudes[::-1].copy())


@dataclass(frozen=True)
class PositionDistribution:
    radius: int
    probabilities: np.ndarray

    @property
    def positions(self):
        return np.arange(-self.radius, self.radius + 1)

    def __getitem__(self, position):
        if abs(position) > self.radius:
            return 0.0
        return float(self.probabilities[position + self.radius])


@dataclass(frozen=True)
class Metrics:
    p_right: float
    p_left: float
    p_origin: float

    @property
    def margin(self):
        return self.p_right - self.p_left

    def as_dict(self):
        return {
            "p_right": self.p_right,
            "p_left": self.p_left,
            "p_origin": self.p_origin,
            "margin": self.margin,
        }


def _at_origin(coin_vector, radius, coin_count):
    state = WalkState.zeros(coin_count, radius)
    state.amplitudes[state.radius] = coin_vector
    return state


def init_single_default(radius):
    """Single coin at the origin in (|0> - i|1>)/sqrt(2)."""
    s = 1.0 / np.sqrt(2.0)
    return _at_origin([s, -1j * s], radius, 1)


def init_two_coin_theta(theta, radius):
    """cos(theta/2)|10> + i sin(theta/2)|01> at the origin; theta in radians."""
    v = np.zeros(4, np.complex128)
    v[0b10] = np.cos(theta / 2.0)
    v[0b01] = 1j * np.sin(theta / 2.0)
    return _at_origin(v, radius, 2)


def init_basis(coin_count, basis_label, radius):
    label = str(basis_label)
    if len(label) != coin_count or set(label) - {"0", "1"}:
        raise InvalidArgumentError(
            f"basis label must be {coin_count} characters of 0/1, got {basis_label!r}"
        )
    v = np.zeros(2**coin_count, np.complex128)
    v[int(label, 2)] = 1.0
    return _at_origin(v, radius, coin_count)


def position_distribution(state):
    probs = np.sum(state.amplitudes.real**2 + state.amplitudes.imag**2, axis=1)
    return PositionDistribution(state.radius, probs)


def metrics_from_probabilities(probs, radius):
    return Metrics(
        p_right=float(np.sum(probs[radius + 1 :])),
        # both sides summed outward from the origin so mirroring is exact
        p_left=float(np.sum(probs[:radius][::-1])),
        p_origin=float(probs[radius]),
    )


def metrics(state):
    """P_R, P_L and P_origin; the origin counts toward neither side."""
    return metrics_from_probabilities(position_distribution(state).probabilities, state.radius)
