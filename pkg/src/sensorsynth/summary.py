"""Per-sensor summary of an event log."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .durations import empirical_stats
from .events import Event, Polarity

SUMMARY_HEADER = ["sensor", "events", "on_seconds_total", "on_mean", "on_sd", "hold_mean", "hold_sd"]


@dataclass(frozen=True)
class SensorSummary:
    sensor: str
    events: int
    on_seconds_total: int
    on_mean: float
    on_sd: float
    hold_mean: float
    hold_sd: float


def summarize(events: Sequence[Event]) -> list[SensorSummary]:
    """ON intervals are ON-edge to the next OFF-edge of the same sensor; a
    trailing unmatched ON is not counted. Holding time is the gap from an
    event to the next event of any sensor."""
    order: dict[str, None] = {}
    counts: dict[str, int] = {}
    on_since: dict[str, int] = {}
    on_spans: dict[str, list[int]] = {}
    holds: dict[str, list[int]] = {}
    for k, e in enumerate(events):
        order.setdefault(e.sensor, None)
        counts[e.sensor] = counts.get(e.sensor, 0) + 1
        if e.polarity is Polarity.ON:
            on_since.setdefault(e.sensor, e.timestamp)
        elif e.sensor in on_since:
            on_spans.setdefault(e.sensor, []).append(e.timestamp - on_since.pop(e.sensor))
        if k + 1 < len(events):
            holds.setdefault(e.sensor, []).append(events[k + 1].timestamp - e.timestamp)

    out = []
    for sensor in order:
        spans = on_spans.get(sensor, [])
        on = empirical_stats(spans)
        hold = empirical_stats(holds.get(sensor, []))
        out.append(SensorSummary(sensor, counts[sensor], sum(spans), on.mean_s, on.sd_s, hold.mean_s, hold.sd_s))
    return out
