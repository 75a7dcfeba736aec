import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sensorsynth import ConfigError, Event, Polarity, learn_generator, transition_counts, validate_matrix
from sensorsynth.events import UnsortedLogError

ON, OFF = Polarity.ON, Polarity.OFF


def ev(minute, sensor, pol):
    return Event(minute * 60, sensor, pol)


HAND_LOG = [ev(0, "A", ON), ev(10, "A", OFF), ev(20, "A", ON), ev(30, "A", OFF)]


def brute_counts(log, h):
    """Oracle: count every consecutive pair directly into a dict."""
    out = {}
    for a, b in zip(log, log[1:]):
        p = (a.timestamp % 86400) // (3600 * h)
        key = (p, f"{a.sensor}_{a.polarity.value}", f"{b.sensor}_{b.polarity.value}")
        out[key] = out.get(key, 0) + 1
    return out


def random_log(rng, n, sensors=("a", "b", "c"), span=5 * 86400):
    ts = sorted(rng.randrange(span) for _ in range(n))
    return [Event(t, rng.choice(sensors), rng.choice([ON, OFF])) for t in ts]


class TestTransitionCounts:
    def test_two_events(self):
        _, counts = transition_counts(HAND_LOG[:2], 6)
        assert sum(int(c.sum()) for c in counts) == 1

    def test_hand_log(self):
        states, counts = transition_counts(HAND_LOG, 6)
        assert states == ("A_ON", "A_OFF")
        assert brute_counts(HAND_LOG, 6) == {(0, "A_ON", "A_OFF"): 2, (0, "A_OFF", "A_ON"): 1}
        assert counts[0].tolist() == [[0, 2], [1, 0]]
        assert all(c.sum() == 0 for c in counts[1:])

    @pytest.mark.parametrize("seed", range(10))
    @pytest.mark.parametrize("h", [1, 3, 6, 24])
    def test_matches_brute_force(self, seed, h):
        log = random_log(random.Random(seed), 300)
        states, counts = transition_counts(log, h)
        assert sum(int(c.sum()) for c in counts) == len(log) - 1
        expected = brute_counts(log, h)
        got = {
            (p, states[i], states[j]): int(counts[p][i, j])
            for p in range(len(counts))
            for i in range(len(states))
            for j in range(len(states))
            if counts[p][i, j]
        }
        assert got == expected

    def test_errors(self):
        with pytest.raises(ConfigError):
            transition_counts(HAND_LOG, 5)
        with pytest.raises(ConfigError):
            transition_counts(HAND_LOG[:1], 6)
        with pytest.raises(UnsortedLogError):
            transition_counts(list(reversed(HAND_LOG)), 6)


class TestLearnGenerator:
    def test_eight_chains(self):
        g = learn_generator(HAND_LOG, 3)
        assert g.chain_set.n_periods == 8

    def test_hand_log(self):
        g = learn_generator(HAND_LOG, 6)
        m = g.chain_set.chains[0]
        assert m.states == ("A_ON", "A_OFF")
        assert m.row("A_ON") == (0.0, 1.0)
        assert m.row("A_OFF") == (1.0, 0.0)
        assert g.durations("A_ON", 0).mean_s == 600
        assert g.durations("A_ON", 0).sample_count == 2
        assert g.specs["A_ON"].sensor == "A" and g.specs["A_OFF"].polarity is OFF

    def test_empty_periods_uniform(self):
        g = learn_generator(HAND_LOG, 6)
        for m in g.chain_set.chains[1:]:
            assert m.rows == ((0.5, 0.5), (0.5, 0.5))

    def test_duration_fallbacks(self):
        # x_ON has one gap in period 0 and two in period 2; y_ON has a single gap
        log = [
            Event(100, "x", ON), Event(400, "x", OFF),
            Event(12 * 3600, "x", ON), Event(12 * 3600 + 100, "x", OFF),
            Event(12 * 3600 + 200, "x", ON), Event(12 * 3600 + 500, "y", ON),
            Event(12 * 3600 + 600, "x", OFF),
        ]
        g = learn_generator(log, 6)
        pooled = g.durations("x_ON", 0)
        assert pooled.sample_count == 3
        assert pooled.mean_s == pytest.approx((300 + 100 + 300) / 3)
        assert g.durations("x_ON", 2).sample_count == 2
        assert g.durations("x_ON", 2).mean_s == 200
        assert g.durations("y_ON", 2).mean_s == 60 and g.durations("y_ON", 2).sd_s == 0
        # the last event contributes nothing: x_OFF gaps are 11.9 h and 100 s
        assert g.durations("x_OFF", 1).sample_count == 2

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 2**32), st.integers(2, 400), st.sampled_from([1, 2, 3, 4, 6, 8, 12, 24]))
    def test_always_valid(self, seed, n, h):
        g = learn_generator(random_log(random.Random(seed), n), h)
        assert all(validate_matrix(m).ok for m in g.chain_set.chains)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 2**32), st.integers(1, 400), st.sampled_from([1, 3, 6]))
    def test_day_shift_invariance(self, seed, days, h):
        log = random_log(random.Random(seed), 200)
        shifted = [Event(e.timestamp + days * 86400, e.sensor, e.polarity) for e in log]
        assert learn_generator(log, h) == learn_generator(shifted, h)

    def test_state_order_is_first_appearance(self):
        log = [ev(0, "z", ON), ev(1, "a", ON), ev(2, "z", OFF), ev(3, "a", OFF)]
        assert learn_generator(log, 24).states == ("z_ON", "a_ON", "z_OFF", "a_OFF")

    def test_counts_normalize_to_rows(self):
        log = random_log(random.Random(5), 500)
        states, counts = transition_counts(log, 3)
        g = learn_generator(log, 3)
        for p, c in enumerate(counts):
            for i, row in enumerate(c):
                if row.sum():
                    np.testing.assert_allclose(g.chain_set.chains[p].rows[i], row / row.sum())
