"""Concurrence, theta sweeps, tail estimates and the single-coin drift limit."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .coins import CoinAngles, _cos_sin_deg, su2_from_angles
from .engine import evolve, required_radius, run, schedule_alternating_multicoin, schedule_constant
from .exceptions import InvalidArgumentError, SingularInputError
from .shifts import preset
from .state import init_two_coin_theta, position_distribution

__all__ = [
    "ThetaSweepRow",
    "KonnoLimit",
    "concurrence_pure",
    "theta_sweep",
    "konno_limit",
    "konno_drift",
    "drift_velocity",
    "tail_estimate",
    "verdict",
    "DRAW_TOLERANCE",
]

DRAW_TOLERANCE = 1e-6


@dataclass(frozen=True)
class ThetaSweepRow:
    theta: float
    concurrence: float
    margin_xy: float
    margin_const: float


@dataclass(frozen=True)
class KonnoLimit:
    lam: complex
    e_value: complex


def concurrence_pure(state):
    """2|a00 a11 - a01 a10| for a two-coin pure state sitting at the origin."""
    if state.coin_count != 2:
        raise InvalidArgumentError(f"concurrence needs a two-coin state, got {state.coin_count}")
    if state.support() != (0, 0):
        raise InvalidArgumentError("concurrence_pure needs a state concentrated at the origin")
    a00, a01, a10, a11 = state.coin_vector(0)
    return float(2.0 * abs(a00 * a11 - a01 * a10))


def tail_estimate(series, window):
    margin = series.margin if hasattr(series, "margin") else np.asarray(series, dtype=float)
    if int(window) != window or window < 1 or window > len(margin):
        raise InvalidArgumentError(f"window must be in 1..{len(margin)}, got {window!r}")
    return float(np.mean(margin[len(margin) - int(window) :]))


def verdict(tail, tol=DRAW_TOLERANCE):
    if abs(tail) < tol:
        return "draw"
    return "win" if tail > 0 else "lose"


def _sweep_row(theta, steps, window, rule, xy, const, backend):
    state = init_two_coin_theta(theta, required_radius(rule, steps))
    return ThetaSweepRow(
        theta=float(theta),
        concurrence=concurrence_pure(state),
        margin_xy=tail_estimate(run(state, xy, rule, steps, backend=backend), window),
        margin_const=tail_estimate(run(state, const, rule, steps, backend=backend), window),
    )


def theta_sweep(theta_grid, steps, window, workers=1, backend=None):
    """Concurrence and tail margins (XYXY and constant A,B under two_wait) per theta.

    Rows come back in grid order whatever ``workers`` is.
    """
    grid = [float(t) for t in theta_grid]
    if not grid:
        raise InvalidArgumentError("theta grid is empty")
    if not 1 <= window <= steps:
        raise InvalidArgumentError(f"need 1 <= window <= steps, got window={window}, steps={steps}")
    rule = preset("two_wait")
    xy = schedule_alternating_multicoin(2, "AB", "BA")
    const = schedule_constant(2, "AB")

    def job(theta):
        return _sweep_row(theta, steps, window, rule, xy, const, backend)

    if workers <= 1:
        return [job(t) for t in grid]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(job, grid))


def _abc(angles):
    if not isinstance(angles, CoinAngles):
        angles = CoinAngles(*angles)
    u = su2_from_angles(angles)
    return complex(u[0, 0]), complex(u[0, 1])


def konno_limit(angles):
    """Evaluate the one-line convergence formula exactly as printed.

    ``lam = [i a b' + i conj(a) b'']/(2|a|^2)`` with ``a = e^{i alpha} cos beta``
    and ``b' = -e^{i gamma} sin beta``, ``b'' = conj(b')``; ``E = -(1 - sqrt(1-|a|^2)) lam``.
    The result is purely imaginary for real angles and does not involve the
    initial coin state, so it is not the simulated drift (see ``konno_drift``).
    """
    if not isinstance(angles, CoinAngles):
        angles = CoinAngles(*angles)
    cb, sb = _cos_sin_deg(angles.beta)
    if cb == 0:
        raise SingularInputError(f"cos(beta) = 0 for beta = {angles.beta} degrees")
    ea = complex(*_cos_sin_deg(angles.alpha))
    eg = complex(*_cos_sin_deg(angles.gamma))
    a = ea * cb
    lam = (1j * a * (-eg) * sb + 1j * ea.conjugate() * cb * (-eg.conjugate()) * sb) / (2 * abs(a) ** 2)
    e = -(1 - math.sqrt(1 - abs(a) ** 2)) * lam
    return KonnoLimit(complex(lam), complex(e))


def konno_drift(angles, coin_state=(2**-0.5, -1j * 2**-0.5)):
    """Limit of <x>/t for a single-coin walk with a constant coin.

    Weak-limit theorem for a homogeneous two-state walk, written for this
    package's shift (|0> steps right). Unlike ``konno_limit`` it keeps the
    initial-state terms.
    """
    a, b = _abc(angles)
    if a == 0:
        raise SingularInputError("cos(beta) = 0: the walk is not spreading ballistically")
    if b == 0:
        raise SingularInputError("sin(beta) = 0: the walk is a deterministic translation")
    x, y = (complex(v) for v in coin_state)
    cross = 2 * (a * x * (b * y).conjugate()).real / abs(a) ** 2
    return (abs(x) ** 2 - abs(y) ** 2 + cross) * (1 - math.sqrt(1 - abs(a) ** 2))


def drift_velocity(initial, schedule, rule, steps, games=None, backend=None):
    """<x>/steps of the simulated walk after ``steps`` steps."""
    final, _ = evolve(initial, schedule, rule, steps, games, backend=backend)
    dist = position_distribution(final)
    return float(np.dot(dist.positions, dist.probabilities) / steps)
