"""Game schedules and N-step evolution ``U_T = S (I_p x C_t)``.

Step ``t`` (0-based) applies the tensored coin for ``schedule.labels(t)`` at
every position, then the coin-conditioned shift. Metrics are recorded after
each shift.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .coins import coin_for_label, tensor
from .exceptions import CapacityError, InvalidArgumentError, NormError
from .shifts import apply_shift
from .state import Metrics, WalkState

__all__ = [
    "GameSchedule",
    "MetricsSeries",
    "schedule_periodic_q",
    "schedule_alternating_multicoin",
    "schedule_constant",
    "schedule_random",
    "coin_at",
    "apply_coin",
    "step",
    "evolve",
    "run",
    "required_radius",
    "CSV_HEADER",
]

LABELS = frozenset("ABIX")
CSV_HEADER = ("step", "p_right", "p_left", "p_origin", "margin")


def _labels(vector, coin_count, what="labels"):
    vec = tuple(str(x) for x in vector)
    if len(vec) != coin_count:
        raise InvalidArgumentError(f"{what} needs {coin_count} entries, got {len(vec)}")
    bad = [x for x in vec if x not in LABELS]
    if bad:
        raise InvalidArgumentError(f"unknown game label(s) {bad}; use A, B, I or X")
    return vec


@dataclass(frozen=True)
class GameSchedule:
    """Cyclic per-step label assignment: step t uses ``pattern[t % len(pattern)]``."""

    coin_count: int
    pattern: tuple
    name: str = "custom"

    def __post_init__(self):
        if self.coin_count not in (1, 2, 3):
            raise InvalidArgumentError(f"coin_count must be 1, 2 or 3, got {self.coin_count!r}")
        if not self.pattern:
            raise InvalidArgumentError("schedule pattern is empty")
        pattern = tuple(_labels(v, self.coin_count) for v in self.pattern)
        object.__setattr__(self, "pattern", pattern)

    def labels(self, t):
        if t < 0:
            raise InvalidArgumentError(f"step index must be >= 0, got {t}")
        return self.pattern[t % len(self.pattern)]

    def sequence(self, steps, coin=0):
        """Label string seen by one coin over the first ``steps`` steps, e.g. 'ABBB'."""
        return "".join(self.labels(t)[coin] for t in range(steps))


def schedule_periodic_q(q, labels=("A", "B")):
    """Single coin: first label when t % q == 0, second label otherwise."""
    if int(q) != q or q < 1:
        raise InvalidArgumentError(f"period q must be an integer >= 1, got {q!r}")
    first, other = labels
    pattern = ((first,),) + ((other,),) * (int(q) - 1)
    return GameSchedule(1, pattern, f"periodic_q{int(q)}")


def schedule_alternating_multicoin(coin_count, first_vector, second_vector):
    first = _labels(first_vector, coin_count, "first_vector")
    second = _labels(second_vector, coin_count, "second_vector")
    return GameSchedule(coin_count, (first, second), f"alternating_{''.join(first)}_{''.join(second)}")


def schedule_constant(coin_count, label_vector):
    vec = _labels(label_vector, coin_count)
    return GameSchedule(coin_count, (vec,), f"constant_{''.join(vec)}")


def schedule_random(coin_count, choices, steps, seed):
    """Seeded random ordering of the given label vectors, ``steps`` long.

    Exploration only; repeats cyclically past ``steps``.
    """
    choices = [_labels(c, coin_count) for c in choices]
    if not choices or steps < 1:
        raise InvalidArgumentError("random schedule needs at least one choice and steps >= 1")
    rng = np.random.default_rng(seed)
    picks = rng.integers(0, len(choices), size=int(steps))
    return GameSchedule(coin_count, tuple(choices[i] for i in picks), f"random_seed{seed}")


def coin_at(schedule, t, games=None):
    return tensor(coin_for_label(label, games) for label in schedule.labels(t))


def apply_coin(state, coin):
    coin = np.asarray(coin)
    if coin.shape != (state.coin_dim, state.coin_dim):
        raise InvalidArgumentError(f"coin of shape {coin.shape} does not fit {state.coin_count} coin(s)")
    return WalkState(state.coin_count, state.radius, state.amplitudes @ coin.T)


def _check_rule(schedule, rule, state):
    if rule.coin_count != state.coin_count or schedule.coin_count != state.coin_count:
        raise InvalidArgumentError(
            f"coin counts differ: state {state.coin_count}, schedule {schedule.coin_count}, "
            f"shift {rule.coin_count}"
        )


def step(state, schedule, rule, t, games=None):
    _check_rule(schedule, rule, state)
    return apply_shift(apply_coin(state, coin_at(schedule, t, games)), rule)


def required_radius(rule, steps):
    return rule.max_displacement * int(steps) + 1


@dataclass
class MetricsSeries:
    """Per-step metrics for steps 1..N; ``data`` columns are p_right, p_left, p_origin."""

    data: np.ndarray
    descriptor: dict = field(default_factory=dict)

    def __len__(self):
        return self.data.shape[0]

    @property
    def p_right(self):
        return self.data[:, 0]

    @property
    def p_left(self):
        return self.data[:, 1]

    @property
    def p_origin(self):
        return self.data[:, 2]

    @property
    def margin(self):
        return self.data[:, 0] - self.data[:, 1]

    @property
    def totals(self):
        return self.data.sum(axis=1)

    def at(self, t):
        """Metrics after step t (1-based)."""
        if not 1 <= t <= len(self):
            raise InvalidArgumentError(f"step {t} outside 1..{len(self)}")
        return Metrics(*map(float, self.data[t - 1]))

    def final(self):
        return self.at(len(self))

    def rows(self):
        margin = self.margin
        for i in range(len(self)):
            yield (i + 1, *map(float, self.data[i]), float(margin[i]))

    def to_csv(self, stream=None):
        """Write ``step,p_right,p_left,p_origin,margin`` rows with 12 significant digits."""
        own = stream is None
        if own:
            stream = io.StringIO()
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in self.rows():
            writer.writerow([row[0]] + [f"{x:.12g}" for x in row[1:]])
        if own:
            return stream.getvalue()
        return None


def _compile_schedule(schedule, steps, games):
    """Distinct tensored coins plus a per-step index into them."""
    index = {}
    mats = []
    for vec in schedule.pattern:
        if vec not in index:
            index[vec] = len(mats)
            mats.append(tensor(coin_for_label(label, games) for label in vec))
    per_pattern = np.array([index[v] for v in schedule.pattern], dtype=np.int64)
    idx = per_pattern[np.arange(steps) % len(schedule.pattern)]
    return np.ascontiguousarray(np.stack(mats)), np.ascontiguousarray(idx)


def evolve(initial, schedule, rule, steps, games=None, check_norm=False, backend=None):
    """Run ``steps`` steps; return (final WalkState, MetricsSeries).

    ``backend`` may be "numba" or "numpy" to bypass the environment default.
    """
    if int(steps) != steps or steps < 0:
        raise InvalidArgumentError(f"steps must be a non-negative integer, got {steps!r}")
    steps = int(steps)
    _check_rule(schedule, rule, initial)
    descriptor = {
        "schedule": schedule.name,
        "shift": rule.name,
        "coin_count": initial.coin_count,
        "steps": steps,
    }
    radius = initial.radius
    span = initial.support()
    if span is None:
        raise InvalidArgumentError("initial state is identically zero")
    lo = min(span[0], 0) + radius
    hi = max(span[1], 0) + radius + 1
    left, right = rule.reach
    if lo - left * steps < 0 or hi + right * steps > 2 * radius + 1:
        raise CapacityError(
            f"{steps} steps of {rule.name!r} need radius >= "
            f"{max(left * steps - lo + radius, right * steps + hi - radius - 1)}, state has {radius}"
        )
    out = np.zeros((steps, 3), dtype=np.float64)
    psi = initial.amplitudes.copy()
    if steps:
        coins, idx = _compile_schedule(schedule, steps, games)
        kernel = _select(backend)
        psi, _, _ = kernel(psi, coins, idx, rule.as_array(), lo, hi, radius, out)
    series = MetricsSeries(out, descriptor)
    if check_norm:
        _assert_norm(series, initial.norm())
    return WalkState(initial.coin_count, radius, psi), series


def run(initial, schedule, rule, steps, games=None, check_norm=False, backend=None):
    return evolve(initial, schedule, rule, steps, games, check_norm, backend)[1]


def _select(backend):
    if backend is None:
        return _kernels.evolve
    if backend == "numba":
        if _kernels.evolve_numba is None:
            raise InvalidArgumentError("numba backend requested but numba is not installed")
        return _kernels.evolve_numba
    if backend == "numpy":
        return _kernels.evolve_numpy
    raise InvalidArgumentError(f"unknown backend {backend!r}")


def _assert_norm(series, expected=1.0, atol=1e-10):
    if len(series) == 0:
        return
    err = np.abs(series.totals - expected)
    worst = int(np.argmax(err))
    if err[worst] > atol:
        raise NormError(f"norm drifted by {err[worst]:.3e} at step {worst + 1}")
