"""Behavioral model consumed by the simulator, and its matrix-mode builder."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from .durations import DurationStats
from .errors import ModelError
from .events import Polarity
from .markov import ChainSet, TransitionMatrix, validate_matrix

log = logging.getLogger(__name__)

# period order of the four named matrices under the 6-hour layout
NAMED_PERIODS = ("night", "morning", "afternoon", "evening")


@dataclass(frozen=True)
class StateSpec:
    """What emitting a state means: which sensor edge, and how long to hold afterwards."""

    sensor: str
    polarity: Polarity
    durations: tuple[DurationStats, ...]  # one per period


@dataclass(frozen=True)
class ActivityRecord:
    activity: str
    polarity: Polarity
    sensor: str
    duration: DurationStats


@dataclass(frozen=True)
class Generator:
    chain_set: ChainSet
    specs: dict[str, StateSpec]

    def __post_init__(self):
        states = self.chain_set.states
        missing = [s for s in states if s not in self.specs]
        if missing:
            raise ModelError(f"no spec for state(s): {', '.join(missing)}")
        extra = [s for s in self.specs if s not in states]
        if extra:
            raise ModelError(f"spec(s) for unknown state(s): {', '.join(extra)}")
        n = self.chain_set.n_periods
        for s, spec in self.specs.items():
            if not spec.sensor:
                raise ModelError(f"state {s!r} has an empty sensor name")
            if len(spec.durations) != n:
                raise ModelError(f"state {s!r} has {len(spec.durations)} duration entries for {n} periods")

    @property
    def states(self) -> tuple[str, ...]:
        return self.chain_set.states

    @property
    def sensors(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for s in self.states:
            seen.setdefault(self.specs[s].sensor, None)
        return tuple(seen)

    @property
    def period_hours(self) -> int:
        return self.chain_set.period_hours

    def durations(self, state: str, period: int) -> DurationStats:
        return self.specs[state].durations[period]


def build_matrix_generator(
    morning: TransitionMatrix,
    afternoon: TransitionMatrix,
    evening: TransitionMatrix,
    night: TransitionMatrix,
    activities: Sequence[ActivityRecord],
) -> Generator:
    named = {"night": night, "morning": morning, "afternoon": afternoon, "evening": evening}
    for name, m in named.items():
        report = validate_matrix(m)
        if not report.ok:
            raise ModelError(f"invalid {name} matrix:\n{report}")

    reference = set(night.states)
    for name, m in named.items():
        if set(m.states) != reference:
            diff = sorted(set(m.states) ^ reference)
            raise ModelError(f"state-set mismatch between {name} and night matrices: {', '.join(diff)}")

    # align every chain to the night matrix's column order
    order = night.states
    chains = tuple(_reorder(named[name], order) for name in NAMED_PERIODS)

    records: dict[str, ActivityRecord] = {}
    for rec in activities:
        if rec.activity in records:
            raise ModelError(f"duplicate activity {rec.activity!r}")
        if not rec.sensor:
            raise ModelError(f"activity {rec.activity!r} has an empty sensor name")
        records[rec.activity] = rec
    missing = [s for s in order if s not in records]
    if missing:
        raise ModelError(f"no activity record for state(s): {', '.join(missing)}")
    for name in records:
        if name not in reference:
            log.warning("activity %r matches no matrix state; dropped", name)

    specs = {
        s: StateSpec(records[s].sensor, records[s].polarity, (records[s].duration,) * len(NAMED_PERIODS))
        for s in order
    }
    return Generator(ChainSet(6, chains), specs)


def _reorder(m: TransitionMatrix, order: tuple[str, ...]) -> TransitionMatrix:
    if m.states == order:
        return m
    idx = [m.index(s) for s in order]
    return TransitionMatrix(order, tuple(tuple(m.rows[i][j] for j in idx) for i in idx))
