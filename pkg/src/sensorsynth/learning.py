"""Estimate a generator from a sample event log."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .durations import DurationStats, empirical_stats
from .errors import ConfigError
from .events import Event, Polarity, check_sorted, state_label
from .generator import Generator, StateSpec
from .markov import SECONDS_PER_DAY, ChainSet, TransitionMatrix, check_period_hours

FALLBACK_STATS = DurationStats(60.0, 0.0, 0)


def _prepare(log: Sequence[Event], interval_hours: int):
    check_period_hours(interval_hours)
    if len(log) < 2:
        raise ConfigError(f"need at least 2 events to learn from, got {len(log)}")
    check_sorted(log)
    keys: dict[tuple[str, Polarity], int] = {}
    codes = []
    for e in log:
        codes.append(keys.setdefault((e.sensor, e.polarity), len(keys)))
    period_s = 3600 * interval_hours
    periods = [(e.timestamp % SECONDS_PER_DAY) // period_s for e in log]
    return list(keys), codes, periods


def transition_counts(log: Sequence[Event], interval_hours: int) -> tuple[tuple[str, ...], list[np.ndarray]]:
    """Count consecutive-pair transitions, credited to the period of the earlier event.

    Returns the state labels (first-appearance order) and one integer count
    matrix per period.
    """
    keys, codes, periods = _prepare(log, interval_hours)
    counts = np.zeros((24 // interval_hours, len(keys), len(keys)), dtype=np.int64)
    np.add.at(counts, (periods[:-1], codes[:-1], codes[1:]), 1)
    return tuple(state_label(*k) for k in keys), list(counts)


def learn_generator(log: Sequence[Event], interval_hours: int) -> Generator:
    keys, codes, periods = _prepare(log, interval_hours)
    states = [state_label(*k) for k in keys]
    n_states = len(states)
    n_periods = 24 // interval_hours

    counts = np.zeros((n_periods, n_states, n_states), dtype=np.int64)
    np.add.at(counts, (periods[:-1], codes[:-1], codes[1:]), 1)

    chains = []
    for p in range(n_periods):
        rows = []
        for i in range(n_states):
            total = int(counts[p, i].sum())
            if total == 0:
                rows.append(tuple(1.0 / n_states for _ in range(n_states)))
            else:
                rows.append(tuple(int(c) / total for c in counts[p, i]))
        chains.append(TransitionMatrix(tuple(states), tuple(rows)))

    holds: dict[tuple[int, int], list[int]] = {}
    for k in range(len(log) - 1):
        holds.setdefault((codes[k], periods[k]), []).append(log[k + 1].timestamp - log[k].timestamp)

    specs = {}
    for i, s in enumerate(states):
        pooled = [g for p in range(n_periods) for g in holds.get((i, p), ())]
        overall = empirical_stats(pooled) if len(pooled) >= 2 else FALLBACK_STATS
        per_period = []
        for p in range(n_periods):
            samples = holds.get((i, p), ())
            per_period.append(empirical_stats(samples) if len(samples) >= 2 else overall)
        sensor, polarity = keys[i]
        specs[s] = StateSpec(sensor, polarity, tuple(per_period))
    return Generator(ChainSet(interval_hours, tuple(chains)), specs)
