import numpy as np
import pytest

import oracle
from parrondo_walk import (
    CapacityError,
    GameSchedule,
    InvalidArgumentError,
    NormError,
    evolve,
    game_coin,
    init_basis,
    init_single_default,
    init_two_coin_theta,
    metrics,
    preset,
    required_radius,
    run,
    schedule_alternating_multicoin,
    schedule_constant,
    schedule_periodic_q,
    schedule_random,
    step,
    tensor,
)
from parrondo_walk.engine import MetricsSeries, _assert_norm, coin_at
from parrondo_walk.experiments import PRESETS


class TestSchedules:
    def test_periodic(self):
        assert schedule_periodic_q(4).sequence(8) == "ABBBABBB"
        assert schedule_periodic_q(1).sequence(5) == "AAAAA"
        assert [schedule_periodic_q(3).labels(t)[0] for t in range(6)] == list("ABBABB")
        for q in (0, -2, 1.5):
            with pytest.raises(InvalidArgumentError):
                schedule_periodic_q(q)

    def test_alternating_two_coin(self):
        s = schedule_alternating_multicoin(2, ("A", "B"), ("B", "A"))
        assert [s.labels(t) for t in range(4)] == [("A", "B"), ("B", "A")] * 2
        assert s.sequence(4, coin=0) == "ABAB" and s.sequence(4, coin=1) == "BABA"
        np.testing.assert_array_equal(coin_at(s, 0), tensor([game_coin("A"), game_coin("B")]))
        np.testing.assert_array_equal(coin_at(s, 1), tensor([game_coin("B"), game_coin("A")]))
        same = schedule_alternating_multicoin(2, "AA", "AA")
        assert {same.labels(t) for t in range(5)} == {("A", "A")}
        with pytest.raises(InvalidArgumentError):
            schedule_alternating_multicoin(2, "AB", "BAB")

    def test_alternating_three_coin(self):
        s = schedule_alternating_multicoin(3, "ABA", "BAB")
        assert s.sequence(4, 0) == "ABAB" and s.sequence(4, 1) == "BABA" and s.sequence(4, 2) == "ABAB"

    def test_constant(self):
        assert schedule_constant(1, "A").sequence(3) == "AAA"
        s = schedule_constant(2, ("A", "B"))
        assert s.sequence(3, 0) == "AAA" and s.sequence(3, 1) == "BBB"
        assert schedule_constant(1, "I").labels(10) == ("I",)
        with pytest.raises(InvalidArgumentError):
            schedule_constant(2, "Q1")

    def test_deterministic(self):
        s = schedule_periodic_q(3)
        assert [s.labels(t) for t in range(30)] == [s.labels(t) for t in range(30)]
        r1 = schedule_random(1, ["A", "B"], 50, seed=3)
        r2 = schedule_random(1, ["A", "B"], 50, seed=3)
        assert r1 == r2 and set(r1.sequence(50)) == {"A", "B"}

    def test_bad_schedule(self):
        with pytest.raises(InvalidArgumentError):
            GameSchedule(2, ())
        with pytest.raises(InvalidArgumentError):
            schedule_constant(1, "A").labels(-1)


class TestStep:
    def test_identity_coin_splits_symmetrically(self):
        s = step(init_single_default(3), schedule_constant(1, "I"), preset("single"), 0)
        assert abs(s.amplitude(1, 0)) ** 2 == pytest.approx(0.5)
        assert abs(s.amplitude(-1, 1)) ** 2 == pytest.approx(0.5)
        assert metrics(s).margin == 0.0

    def test_norm_preserved(self):
        s = step(init_two_coin_theta(0.7, 3), schedule_constant(2, "AB"), preset("two_wait"), 0)
        assert s.norm() == pytest.approx(1.0, abs=1e-12)

    def test_two_coin_hand_calculation(self):
        # (A x B)|10>: |00> gets A01*B00 and moves right, |11> gets A11*B10 and moves left;
        # margin = |A01 B00|^2 - |A11 B10|^2 = cos(176 deg)/2, evaluated with mpmath
        s = step(init_basis(2, "10", 2), schedule_constant(2, "AB"), preset("two_wait"), 0)
        assert metrics(s).margin == pytest.approx(-0.4987820251299121238, abs=1e-14)

    def test_mismatched_rule(self):
        with pytest.raises(InvalidArgumentError):
            step(init_single_default(3), schedule_constant(1, "A"), preset("two_wait"), 0)


class TestRun:
    def test_zero_steps(self):
        series = run(init_single_default(1), schedule_constant(1, "A"), preset("single"), 0)
        assert len(series) == 0

    def test_bitwise_deterministic(self):
        args = (init_two_coin_theta(np.pi / 4, 201), schedule_alternating_multicoin(2, "AB", "BA"),
                preset("two_wait"), 200)
        a, b = run(*args), run(*args)
        assert a.data.tobytes() == b.data.tobytes()

    def test_norm_along_trajectory(self):
        rule = preset("single")
        series = run(init_single_default(required_radius(rule, 1600)), schedule_periodic_q(4), rule, 1600,
                     check_norm=True)
        assert np.max(np.abs(series.totals - 1)) < 1e-10

    def test_norm_checked_against_initial_norm(self):
        s = init_single_default(5)
        s.amplitudes *= 2
        series = run(s, schedule_constant(1, "A"), preset("single"), 3, check_norm=True)
        assert series.totals[-1] == pytest.approx(4.0)

    def test_norm_error(self):
        bad = MetricsSeries(np.array([[0.5, 0.5, 0.0], [0.5, 0.5, 1e-11]]))
        _assert_norm(bad)
        bad.data[1, 2] = 1e-8
        with pytest.raises(NormError, match="step 2"):
            _assert_norm(bad)

    def test_capacity_checked_up_front(self):
        with pytest.raises(CapacityError):
            run(init_single_default(10), schedule_constant(1, "A"), preset("single"), 11)
        with pytest.raises(InvalidArgumentError):
            run(init_single_default(10), schedule_constant(1, "A"), preset("single"), -1)

    def test_support_bound_exact_zeros(self):
        rule = preset("one_wait")
        final, _ = evolve(init_basis(2, "00", 60), schedule_alternating_multicoin(2, "AB", "BA"), rule, 20)
        pos = final.positions
        assert np.all(final.amplitudes[np.abs(pos) > 2 * 20] == 0)
        assert np.any(final.amplitudes[np.abs(pos) == 2 * 20] != 0)

    def test_matches_repeated_step(self):
        rule = preset("three_coin")
        sched = schedule_alternating_multicoin(3, "ABA", "BAB")
        state = init_basis(3, "010", 25)
        series = run(state, sched, rule, 12)
        for t in range(12):
            state = step(state, sched, rule, t)
            assert metrics(state).margin == pytest.approx(series.margin[t], abs=1e-14)

    def test_classical_limit(self):
        rule = preset("single")
        for sched in (schedule_constant(1, "I"), schedule_constant(1, "X"), schedule_periodic_q(2, ("I", "X"))):
            series = run(init_single_default(required_radius(rule, 400)), sched, rule, 400)
            assert np.max(np.abs(series.margin)) < 1e-12

    def test_maximal_entanglement_draws(self):
        rule = preset("two_wait")
        series = run(init_two_coin_theta(np.pi / 2, required_radius(rule, 800)),
                     schedule_alternating_multicoin(2, "AB", "BA"), rule, 800)
        assert np.max(np.abs(series.margin)) < 1e-10

    def test_game_override(self):
        rule = preset("single")
        s = init_single_default(required_radius(rule, 50))
        plain = run(s, schedule_constant(1, "A"), rule, 50)
        swapped = run(s, schedule_constant(1, "A"), rule, 50, games={"A": (0, 88, -16)})
        direct_b = run(s, schedule_constant(1, "B"), rule, 50)
        assert not np.array_equal(plain.data, swapped.data)
        np.testing.assert_array_equal(swapped.data, direct_b.data)

    @pytest.mark.xfail(strict=True, reason="P_R-P_L tail for coin A is -0.389; the quoted -0.2276 is the <x>/t drift "
                                           "(see acceptance criterion 1 and test_analysis drift tests)")
    def test_constant_a_final_margin_quoted(self):
        rule = preset("single")
        series = run(init_single_default(required_radius(rule, 1000)), schedule_constant(1, "A"), rule, 1000)
        assert series.margin[-1] == pytest.approx(-0.2276, abs=0.02)

    @pytest.mark.xfail(strict=True, reason="P_R-P_L tail for coin B is -0.175; the quoted value is the <x>/t drift "
                                           "with misplaced decimals (see acceptance criterion 2)")
    def test_constant_b_final_margin_quoted(self):
        rule = preset("single")
        series = run(init_single_default(required_radius(rule, 1000)), schedule_constant(1, "B"), rule, 1000)
        assert series.margin[-1] == pytest.approx(-0.4808, abs=0.02)


def _oracle_case(config, steps):
    sched = config.build_schedule()
    state = config.with_overrides(steps=steps).build_initial()
    rule = preset(config.shift)
    expected, final = oracle.walk(state.coin_vector(0), sched.labels, rule.displacements, steps, state.radius)
    return state, sched, rule, expected, final


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_dense_oracle_on_presets(name):
    state, sched, rule, expected, final = _oracle_case(PRESETS[name], 5)
    got_state, series = evolve(state, sched, rule, 5)
    np.testing.assert_allclose(series.margin, expected, rtol=0, atol=1e-12)
    np.testing.assert_allclose(got_state.amplitudes, final, rtol=0, atol=1e-12)


@pytest.mark.parametrize("backend", ["numpy", "numba"])
@pytest.mark.parametrize("steps", [1, 2, 3, 4, 5])
def test_dense_oracle_small_runs(backend, steps):
    rule = preset("one_wait")
    state = init_two_coin_theta(1.1, required_radius(rule, steps))
    sched = schedule_alternating_multicoin(2, "BA", "AB")
    expected, _ = oracle.walk(state.coin_vector(0), sched.labels, rule.displacements, steps, state.radius)
    np.testing.assert_allclose(run(state, sched, rule, steps, backend=backend).margin, expected, rtol=0, atol=1e-12)
