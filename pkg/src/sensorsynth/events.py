"""Binary sensor edge events, the common input/output record."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .errors import SensorSynthError


class Polarity(str, enum.Enum):
    ON = "ON"
    OFF = "OFF"

    @classmethod
    def parse(cls, text: str) -> "Polarity":
        try:
            return cls(text.strip().upper())
        except ValueError:
            raise ValueError(f"polarity must be ON or OFF, got {text!r}") from None

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, slots=True)
class Event:
    timestamp: int  # seconds since epoch, UTC
    sensor: str
    polarity: Polarity

    @property
    def state(self) -> str:
        return state_label(self.sensor, self.polarity)


EventLog = list[Event]


def state_label(sensor: str, polarity: Polarity) -> str:
    return f"{sensor}_{polarity.value}"


class UnsortedLogError(SensorSynthError, ValueError):
    pass


def check_sorted(events: Sequence[Event]) -> None:
    for i in range(1, len(events)):
        if events[i].timestamp < events[i - 1].timestamp:
            raise UnsortedLogError(
                f"event log not sorted: event {i} at {events[i].timestamp} precedes event {i - 1} at {events[i - 1].timestamp}"
            )
