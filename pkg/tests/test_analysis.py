import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from parrondo_walk import (
    CoinAngles,
    InvalidArgumentError,
    MetricsSeries,
    SingularInputError,
    WalkState,
    concurrence_pure,
    drift_velocity,
    init_basis,
    init_single_default,
    init_two_coin_theta,
    konno_drift,
    konno_limit,
    preset,
    required_radius,
    run,
    schedule_constant,
    tail_estimate,
    theta_sweep,
    verdict,
)


def series_of(margins):
    m = np.asarray(margins, dtype=float)
    return MetricsSeries(np.column_stack([np.clip(m, 0, None), np.clip(-m, 0, None), 1 - np.abs(m)]))


class TestConcurrence:
    def test_examples(self):
        assert concurrence_pure(init_two_coin_theta(0.0, 2)) == 0.0
        assert concurrence_pure(init_two_coin_theta(np.pi / 2, 2)) == pytest.approx(1.0, abs=1e-15)
        assert concurrence_pure(init_two_coin_theta(np.pi / 4, 2)) == pytest.approx(0.70711, abs=1e-5)

    def test_closed_form_on_grid(self):
        for theta in np.linspace(0, 2 * np.pi, 100):
            assert abs(concurrence_pure(init_two_coin_theta(theta, 1)) - abs(np.sin(theta))) < 1e-12

    @given(st.floats(0, 2 * np.pi), st.floats(-np.pi, np.pi))
    def test_global_phase_invariance(self, theta, phase):
        s = init_two_coin_theta(theta, 1)
        rotated = WalkState(2, 1, s.amplitudes * cmath.exp(1j * phase))
        assert abs(concurrence_pure(rotated) - concurrence_pure(s)) < 1e-15

    def test_bell_state(self):
        s = init_basis(2, "00", 0)
        s.amplitudes[0] = np.array([1, 0, 0, 1]) / np.sqrt(2)
        assert concurrence_pure(s) == pytest.approx(1.0)

    def test_rejects_bad_input(self):
        with pytest.raises(InvalidArgumentError):
            concurrence_pure(init_single_default(2))
        s = init_two_coin_theta(0.3, 2)
        s.amplitudes[3] = s.amplitudes[2]
        with pytest.raises(InvalidArgumentError):
            concurrence_pure(s)


class TestTail:
    def test_constant(self):
        assert tail_estimate(series_of([0.3] * 10), 4) == pytest.approx(0.3)

    def test_full_window(self):
        m = [0.1, -0.2, 0.4, 0.05]
        assert tail_estimate(series_of(m), 4) == pytest.approx(np.mean(m))

    @given(st.lists(st.floats(-1, 1), min_size=1, max_size=20), st.lists(st.floats(-1, 1), max_size=20),
           st.integers(1, 20))
    def test_prefix_invariance(self, body, prefix, w):
        w = min(w, len(body))
        assert tail_estimate(series_of(prefix + body), w) == tail_estimate(series_of(body), w)

    def test_window_checked(self):
        with pytest.raises(InvalidArgumentError):
            tail_estimate(series_of([0.1, 0.2]), 3)
        with pytest.raises(InvalidArgumentError):
            tail_estimate(series_of([0.1, 0.2]), 0)

    def test_verdict(self):
        assert verdict(5e-7) == "draw" and verdict(-5e-7) == "draw"
        assert verdict(2e-6) == "win" and verdict(-0.3) == "lose"


class TestKonno:
    def test_trivial(self):
        k = konno_limit(CoinAngles(0, 0, 0))
        assert k.lam == 0 and k.e_value == 0

    def test_game_a_printed_formula(self):
        # extended precision: lam = -0.62932039105i, E = +0.18432367500i
        k = konno_limit(CoinAngles(-51, 45, 0))
        assert k.lam == pytest.approx(-0.629320391049837452706j, abs=1e-14)
        assert k.e_value == pytest.approx(0.184323674999527519944j, abs=1e-14)

    def test_game_b_printed_formula(self):
        k = konno_limit(CoinAngles(0, 88, -16))
        assert k.lam == pytest.approx(-27.5269333960547042011j, abs=1e-11)
        assert k.e_value == pytest.approx(0.0167686640720279442914j, abs=1e-14)

    @given(st.floats(-180, 180), st.floats(-89, 89), st.floats(-180, 180))
    def test_lambda_closed_form(self, a, b, g):
        k = konno_limit(CoinAngles(a, b, g))
        expected = -1j * math.tan(math.radians(b)) * math.cos(math.radians(a + g))
        assert abs(k.lam - expected) < 1e-12 * max(1.0, abs(expected))

    def test_singular(self):
        with pytest.raises(SingularInputError):
            konno_limit(CoinAngles(10, 90, 0))
        with pytest.raises(SingularInputError):
            konno_limit(CoinAngles(10, -90, 0))

    def test_drift_reproduces_quoted_limits(self):
        # extended-precision evaluation: -0.2276207821390, -0.0048083370480
        assert konno_drift(CoinAngles(-51, 45, 0)) == pytest.approx(-0.227620782139007, abs=1e-14)
        assert konno_drift(CoinAngles(0, 88, -16)) == pytest.approx(-0.00480833704799352, abs=1e-15)
        assert round(konno_drift(CoinAngles(-51, 45, 0)), 6) == -0.227621

    @pytest.mark.parametrize("label, angles", [("A", (-51, 45, 0)), ("B", (0, 88, -16)), ("A", (30, 60, 10))])
    def test_drift_matches_simulation(self, label, angles):
        rule = preset("single")
        n = 4000
        v = drift_velocity(init_single_default(required_radius(rule, n)), schedule_constant(1, label), rule, n,
                           games={label: angles})
        # <x>/t converges like 1/t
        assert v == pytest.approx(konno_drift(CoinAngles(*angles)), abs=2e-3)

    def test_drift_with_other_coin_states(self):
        rule = preset("single")
        rng = np.random.default_rng(5)
        for _ in range(3):
            v = rng.normal(size=2) + 1j * rng.normal(size=2)
            v /= np.linalg.norm(v)
            state = init_single_default(required_radius(rule, 3000))
            state.amplitudes[state.radius] = v
            sim = drift_velocity(state, schedule_constant(1, "A"), rule, 3000)
            assert sim == pytest.approx(konno_drift(CoinAngles(-51, 45, 0), v), abs=2e-3)


@pytest.fixture(scope="module")
def rows():
    grid = [0.0, np.pi / 4, np.pi / 2, np.pi, 5 * np.pi / 4, 7 * np.pi / 4]
    return theta_sweep(grid, steps=400, window=100)


class TestSweep:
    def test_maximal_entanglement_row(self, rows):
        r = rows[2]
        assert r.concurrence == pytest.approx(1.0)
        assert abs(r.margin_xy) < 1e-6 and abs(r.margin_const) < 1e-6

    def test_role_reversal(self, rows):
        first = rows[1]
        for r in rows[3:5]:
            assert np.sign(r.margin_xy) == -np.sign(first.margin_xy)
            assert np.sign(r.margin_const) == -np.sign(first.margin_const)

    def test_concurrence_column(self, rows):
        for r in rows:
            assert 0 <= r.concurrence <= 1
            assert r.concurrence == pytest.approx(abs(math.sin(r.theta)), abs=1e-12)

    def test_parallel_rows_keep_order(self, rows):
        grid = [r.theta for r in rows]
        again = theta_sweep(grid, steps=400, window=100, workers=3)
        assert again == rows

    @pytest.mark.xfail(strict=True, reason="alternation follows the sign of the constant (A,B) game here; "
                                           "see acceptance criterion 4")
    def test_partially_entangled_alternation_wins(self, rows):
        assert rows[1].margin_xy > 0

    def test_bad_arguments(self):
        with pytest.raises(InvalidArgumentError):
            theta_sweep([], 10, 5)
        with pytest.raises(InvalidArgumentError):
            theta_sweep([0.1], 10, 11)
