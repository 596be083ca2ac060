"""Discrete-time quantum walks with one, two and three coins, and the
Parrondo-style game sequences played on them."""
from ._kernels import BACKEND
from .analysis import (
    KonnoLimit,
    ThetaSweepRow,
    concurrence_pure,
    drift_velocity,
    konno_drift,
    konno_limit,
    tail_estimate,
    theta_sweep,
    verdict,
)
from .coins import (
    GAME_ANGLES,
    CoinAngles,
    classical_coin,
    coin_for_label,
    game_coin,
    is_unitary,
    su2_from_angles,
    tensor,
)
from .engine import (
    GameSchedule,
    MetricsSeries,
    apply_coin,
    evolve,
    required_radius,
    run,
    schedule_alternating_multicoin,
    schedule_constant,
    schedule_periodic_q,
    schedule_random,
    step,
)
from .exceptions import (
    CapacityError,
    ConfigError,
    InvalidArgumentError,
    NormError,
    SingularInputError,
    WalkError,
)
from .shifts import ShiftName, ShiftRule, apply_shift, preset
from .state import (
    Metrics,
    PositionDistribution,
    WalkState,
    init_basis,
    init_single_default,
    init_two_coin_theta,
    metrics,
    position_distribution,
)

__version__ = "0.1.0"
