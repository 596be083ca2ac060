"""SU(2) coin operators and their tensor products.

Coin matrices are plain ``complex128`` numpy arrays marked read-only. For
``c`` coins the basis index of ``|b1 b2 ... bc>`` is the integer whose most
significant bit is ``b1``, which is exactly the ``np.kron`` ordering.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidArgumentError

__all__ = [
    "CoinAngles",
    "GAME_ANGLES",
    "su2_from_angles",
    "game_coin",
    "classical_coin",
    "coin_for_label",
    "tensor",
    "is_unitary",
]

MAX_COINS = 3


@dataclass(frozen=True)
class CoinAngles:
    """Coin parameters in degrees."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            value = getattr(self, name)
            try:
                ok = math.isfinite(value)
            except TypeError:
                ok = False
            if not ok:
                raise InvalidArgumentError(f"{name} must be a finite real number, got {value!r}")


GAME_ANGLES = {
    "A": CoinAngles(-51.0, 45.0, 0.0),
    "B": CoinAngles(0.0, 88.0, -16.0),
}

# exact values at multiples of 90 degrees, so U(0, 0, 0) is exactly I
_QUARTER_TURNS = ((1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0))


def _cos_sin_deg(x):
    if x % 90.0 == 0.0:
        return _QUARTER_TURNS[int(x // 90.0) % 4]
    r = math.radians(x)
    return math.cos(r), math.sin(r)


def _phase_deg(x):
    c, s = _cos_sin_deg(x)
    return complex(c, s)


def _frozen(m):
    m = np.ascontiguousarray(m, dtype=np.complex128)
    m.flags.writeable = False
    return m


def su2_from_angles(angles):
    """Return U(alpha, beta, gamma) for angles given in degrees.

    ::

        [[ e^{i a} cos b,  -e^{-i g} sin b ],
         [ e^{i g} sin b,   e^{-i a} cos b ]]
    """
    if not isinstance(angles, CoinAngles):
        angles = CoinAngles(*angles)
    cb, sb = _cos_sin_deg(angles.beta)
    ea = _phase_deg(angles.alpha)
    eg = _phase_deg(angles.gamma)
    return _frozen(
        [
            [ea * cb, -eg.conjugate() * sb],
            [eg * sb, ea.conjugate() * cb],
        ]
    )


def game_coin(label):
    try:
        return su2_from_angles(GAME_ANGLES[label])
    except KeyError:
        raise InvalidArgumentError(f"game label must be 'A' or 'B', got {label!r}") from None


_CLASSICAL = {
    "I": ((1, 0), (0, 1)),
    "X": ((0, 1), (1, 0)),
}


def classical_coin(label):
    try:
        return _frozen(_CLASSICAL[label])
    except KeyError:
        raise InvalidArgumentError(f"classical label must be 'I' or 'X', got {label!r}") from None


def coin_for_label(label, games=None):
    """Resolve a schedule label (A, B, I or X) to its 2x2 coin.

    ``games`` optionally overrides the angles used for A and B.
    """
    if label in _CLASSICAL:
        return classical_coin(label)
    if games is not None and label in games:
        return su2_from_angles(games[label])
    return game_coin(label)


def tensor(factors):
    """Kronecker product of 1 to 3 coins; the first factor acts on coin 1."""
    factors = list(factors)
    if not 1 <= len(factors) <= MAX_COINS:
        raise InvalidArgumentError(f"tensor takes 1 to {MAX_COINS} factors, got {len(factors)}")
    out = np.asarray(factors[0], dtype=np.complex128)
    for f in factors[1:]:
        out = np.kron(out, np.asarray(f, dtype=np.complex128))
    return _frozen(out)


def is_unitary(m, atol=1e-12):
    m = np.asarray(m)
    return bool(np.allclose(m @ m.conj().T, np.eye(m.shape[0]), rtol=0.0, atol=atol))
