"""Exception types raised across the package."""

from __future__ import annotations


class SensorSynthError(Exception):
    """Base class for all data/model errors (CLI maps these to exit code 1)."""


class UnknownStateError(SensorSynthError, KeyError):
    def __init__(self, state: str):
        super().__init__(state)
        self.state = state

    def __str__(self) -> str:
        return f"unknown state {self.state!r}"


class UnknownSensorError(SensorSynthError, KeyError):
    def __init__(self, sensor: str):
        super().__init__(sensor)
        self.sensor = sensor

    def __str__(self) -> str:
        return f"unknown sensor {self.sensor!r}"


class ConfigError(SensorSynthError, ValueError):
    pass


class ModelError(SensorSynthError, ValueError):
    """A generator could not be assembled from its inputs."""


class ParseError(SensorSynthError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: str | None = None, path: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.path = path
        super().__init__(str(self))

    def __str__(self) -> str:
        where = []
        if self.path:
            where.append(str(self.path))
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.column is not None:
            where.append(f"column {self.column!r}")
        prefix = ", ".join(where)
        return f"{prefix}: {self.message}" if prefix else self.message
