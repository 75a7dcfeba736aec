"""Clock-driven simulation of a generator, with anomaly windows."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .durations import DurationStats, outlier_mean, sample_duration
from .errors import ConfigError, UnknownSensorError
from .events import Event, EventLog, Polarity
from .generator import Generator
from .markov import SECONDS_PER_DAY, RandomSource, draw_index


class AnomalyKind(str, enum.Enum):
    ACTIVITY = "activity"
    DURATION_LONG = "duration_long"
    DURATION_SHORT = "duration_short"
    BOTH = "both"

    def __str__(self) -> str:
        return self.value

    @property
    def swaps_period(self) -> bool:
        return self in (AnomalyKind.ACTIVITY, AnomalyKind.BOTH)

    @property
    def shifts_duration(self) -> bool:
        return self is not AnomalyKind.ACTIVITY


@dataclass(frozen=True)
class AnomalySpec:
    """Closed window ``[window_start, window_end]`` during which behavior is perturbed."""

    window_start: int
    window_end: int
    kind: AnomalyKind

    def __post_init__(self):
        object.__setattr__(self, "kind", AnomalyKind(self.kind))
        if not self.window_start < self.window_end:
            raise ConfigError(f"anomaly window start {self.window_start} is not before end {self.window_end}")

    def contains(self, t: int) -> bool:
        return self.window_start <= t <= self.window_end


@dataclass(frozen=True)
class SimConfig:
    days: int
    seed: int
    start_time: int = 0
    anomalies: tuple[AnomalySpec, ...] = field(default_factory=tuple)
    max_rejections: int = 32
    stall_tick: int = 60

    def __post_init__(self):
        object.__setattr__(self, "anomalies", tuple(self.anomalies))
        if self.days < 1:
            raise ConfigError(f"days must be >= 1, got {self.days}")
        if self.stall_tick < 1:
            raise ConfigError(f"stall_tick must be >= 1, got {self.stall_tick}")
        if self.max_rejections < 1:
            raise ConfigError(f"max_rejections must be >= 1, got {self.max_rejections}")
        if self.start_time < 0:
            raise ConfigError("start_time must be >= 0")
        RandomSource(self.seed)  # validates the seed range

    @property
    def end_time(self) -> int:
        return self.start_time + self.days * SECONDS_PER_DAY


def is_valid_event(state: dict[str, bool], sensor: str, polarity: Polarity) -> bool:
    """An ON edge needs the sensor OFF, an OFF edge needs it ON."""
    try:
        on = state[sensor]
    except KeyError:
        raise UnknownSensorError(sensor) from None
    return on != (polarity is Polarity.ON)


def _active_index(anomalies: Sequence[AnomalySpec], t: int) -> int | None:
    best = None
    for k, a in enumerate(anomalies):
        if a.contains(t) and (best is None or a.window_start < anomalies[best].window_start):
            best = k
    return best


def active_anomaly(anomalies: Sequence[AnomalySpec], t: int) -> AnomalySpec | None:
    """The window containing ``t``; the earliest-starting one wins on overlap."""
    k = _active_index(anomalies, t)
    return None if k is None else anomalies[k]


def anomalous_period(true_period: int, n_periods: int, rng: RandomSource) -> int:
    """A uniformly chosen period other than ``true_period``."""
    if n_periods < 2:
        raise ConfigError("an anomalous period needs at least 2 periods in the day")
    if not 0 <= true_period < n_periods:
        raise ValueError(f"period {true_period} outside [0, {n_periods})")
    k = rng.integer(n_periods - 1)
    return k if k < true_period else k + 1


def simulate(gen: Generator, cfg: SimConfig) -> EventLog:
    rng = RandomSource(cfg.seed)
    states = gen.states
    n_states = len(states)
    n_periods = gen.chain_set.n_periods
    period_s = 3600 * gen.period_hours
    chains = gen.chain_set.chains
    rows = [[list(m.rows[i]) for i in range(n_states)] for m in chains]
    cumulative = [m._cumulative for m in chains]
    sensor_of = [gen.specs[s].sensor for s in states]
    polarity_of = [gen.specs[s].polarity for s in states]
    wants_on = [p is Polarity.ON for p in polarity_of]
    stats_of = [gen.specs[s].durations for s in states]
    anomalies = cfg.anomalies
    if n_periods < 2 and any(a.kind.swaps_period for a in anomalies):
        raise ConfigError("activity anomalies need a generator with at least 2 periods")

    sensor_on = {s: False for s in gen.sensors}
    swapped: dict[tuple[int, int], int] = {}
    both_direction: dict[tuple[int, int], str] = {}
    out: EventLog = []

    t = cfg.start_time
    t_end = cfg.end_time
    current = 0
    while t < t_end:
        true_p = (t % SECONDS_PER_DAY) // period_s
        k = _active_index(anomalies, t) if anomalies else None
        anomaly = anomalies[k] if k is not None else None
        p = true_p
        if anomaly is not None and anomaly.kind.swaps_period:
            key = (k, true_p)
            if key not in swapped:
                swapped[key] = anomalous_period(true_p, n_periods, rng)
            p = swapped[key]

        cand = draw_index(cumulative[p][current], rng.uniform())
        if sensor_on[sensor_of[cand]] == wants_on[cand]:
            # invalid edge: zero its column and redraw from what is left of the row
            weights = rows[p][current][:]
            failures = 0
            while True:
                failures += 1
                weights[cand] = 0.0
                total = sum(weights)
                if failures >= cfg.max_rejections or total <= 0.0:
                    cand = -1
                    break
                u = rng.uniform() * total
                acc = 0.0
                cand = -1
                for j, w in enumerate(weights):
                    acc += w
                    if w > 0.0:
                        cand = j
                        if acc > u:
                            break
                if sensor_on[sensor_of[cand]] != wants_on[cand]:
                    break
            if cand < 0:
                t += cfg.stall_tick
                continue

        out.append(Event(t, sensor_of[cand], polarity_of[cand]))
        sensor_on[sensor_of[cand]] = wants_on[cand]
        current = cand

        stats = stats_of[cand][true_p]
        if anomaly is not None and anomaly.kind.shifts_duration:
            stats = _shifted(stats, anomaly.kind, (k, cand), both_direction, rng)
        t += sample_duration(stats, rng)
    return out


def _shifted(stats: DurationStats, kind: AnomalyKind, key, cache: dict, rng: RandomSource) -> DurationStats:
    if kind is AnomalyKind.DURATION_LONG:
        direction = "long"
    elif kind is AnomalyKind.DURATION_SHORT:
        direction = "short"
    else:
        # one direction per (window, state), kept for the whole window
        if key not in cache:
            cache[key] = "long" if rng.integer(2) else "short"
        direction = cache[key]
    return DurationStats(outlier_mean(stats, direction), stats.sd_s, stats.sample_count)
